#pragma once

// Shared fixtures for the unit tests: canonical polytopes and a seeded
// corpus sampler.

#include <Eigen/Dense>
#include <vector>

#include "polyround/generators.hpp"
#include "polyround/polytope.hpp"

namespace testutil {

inline polyround::HPolytope unit_square() {
    Eigen::MatrixXd a(4, 2);
    a << 1, 0, 0, 1, -1, 0, 0, -1;
    return polyround::normalize(a, Eigen::VectorXd::Ones(4));
}

inline polyround::HPolytope unit_cube3() {
    return polyround::generate({polyround::Family::Cube, 3, 0});
}

// {x1 >= 0, x2 >= 0, x1 + x2 <= 1}
inline polyround::HPolytope right_triangle() {
    Eigen::MatrixXd a(3, 2);
    a << -1, 0, 0, -1, 1, 1;
    Eigen::VectorXd b(3);
    b << 0, 0, 1;
    return polyround::normalize(a, b);
}

inline polyround::HPolytope equilateral_triangle() {
    return polyround::generate({polyround::Family::RegularSimplex, 2, 0});
}

// Small mixed corpus of bounded polytopes, deterministic in the seed.
inline std::vector<polyround::HPolytope> small_corpus(std::uint64_t seed, int count, int max_dim) {
    std::vector<polyround::HPolytope> out;
    std::uint64_t s = seed;
    while (static_cast<int>(out.size()) < count) {
        const int d = 2 + static_cast<int>(s % static_cast<std::uint64_t>(max_dim - 1));
        polyround::GeneratorSpec spec;
        spec.dim = d;
        spec.seed = s;
        switch (s % 4) {
            case 0: spec.family = polyround::Family::Cube; break;
            case 1: spec.family = polyround::Family::RotatedCube; break;
            case 2: spec.family = polyround::Family::PerturbedSimplex; spec.noise = 0.05; break;
            default:
                spec.family = polyround::Family::TangentBall;
                spec.num_facets = d + 2 + static_cast<int>(s % 5);
                break;
        }
        try {
            out.push_back(polyround::generate(spec));
        } catch (const polyround::GenerationFailed&) {
            // tangent-ball draws can fail to span; just move to the next seed
        }
        ++s;
    }
    return out;
}

}  // namespace testutil

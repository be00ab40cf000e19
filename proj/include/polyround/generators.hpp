#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <optional>
#include <random>
#include <string>

#include "polyround/polytope.hpp"

namespace polyround {

// Deterministic random stream: mt19937_64 for raw 64-bit words, doubles via
// the top 53 bits, Gaussians via Box-Muller. Identical seeds give identical
// polytopes everywhere.
class RandomStream {
  public:
    explicit RandomStream(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next_u64() { return engine_(); }

    // uniform in [0, 1)
    double next_unit() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    double next_gaussian() {
        if (spare_) {
            const double z = *spare_;
            spare_.reset();
            return z;
        }
        const double u1 = static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53;  // (0, 1]
        const double u2 = next_unit();
        const double radius = std::sqrt(-2.0 * std::log(u1));
        const double angle = 2.0 * std::numbers::pi * u2;
        spare_ = radius * std::sin(angle);
        return radius * std::cos(angle);
    }

    Eigen::VectorXd gaussian_vector(int d) {
        Eigen::VectorXd v(d);
        for (int i = 0; i < d; ++i) v(i) = next_gaussian();
        return v;
    }

    Eigen::VectorXd unit_sphere_sample(int d) {
        for (;;) {
            const Eigen::VectorXd v = gaussian_vector(d);
            const double norm = v.norm();
            if (norm > 1e-12) return v / norm;
        }
    }

    // Haar-ish orthogonal matrix: modified Gram-Schmidt on a Gaussian matrix.
    Eigen::MatrixXd orthogonal_matrix(int d) {
        for (;;) {
            Eigen::MatrixXd g(d, d);
            for (int c = 0; c < d; ++c) g.col(c) = gaussian_vector(d);
            bool ok = true;
            for (int c = 0; c < d && ok; ++c) {
                for (int k = 0; k < c; ++k) g.col(c) -= g.col(k).dot(g.col(c)) * g.col(k);
                const double norm = g.col(c).norm();
                if (norm < 1e-8) ok = false;
                else g.col(c) /= norm;
            }
            if (ok) return g;
        }
    }

  private:
    std::mt19937_64 engine_;
    std::optional<double> spare_;
};

enum class Family { Cube, RegularSimplex, Slab, TangentBall, RotatedCube, PerturbedSimplex };

struct GeneratorSpec {
    Family family = Family::Cube;
    int dim = 2;
    std::uint64_t seed = 0;
    int num_facets = 0;     // TangentBall; defaults to 2*dim when <= 0
    double epsilon = 1e-3;  // Slab half-thickness
    double noise = 0.05;    // PerturbedSimplex normal perturbation
};

inline constexpr int kGenerationAttempts = 100;

namespace detail {

inline HPolytope cube_polytope(int d) {
    Eigen::MatrixXd normals = Eigen::MatrixXd::Zero(2 * d, d);
    for (int k = 0; k < d; ++k) {
        normals(k, k) = 1.0;
        normals(d + k, k) = -1.0;
    }
    return normalize(normals, Eigen::VectorXd::Ones(2 * d));
}

// d+1 unit normals with pairwise dot -1/d: the centered unit-basis frame of
// R^(d+1), reflected so the all-ones direction maps onto the last axis.
inline HPolytope regular_simplex_polytope(int d) {
    const int n = d + 1;
    Eigen::VectorXd ones_dir = Eigen::VectorXd::Constant(n, 1.0 / std::sqrt(double(n)));
    Eigen::VectorXd w = ones_dir - Eigen::VectorXd::Unit(n, n - 1);
    const double wnorm2 = w.squaredNorm();
    Eigen::MatrixXd normals(n, d);
    for (int k = 0; k < n; ++k) {
        Eigen::VectorXd e = Eigen::VectorXd::Unit(n, k) - Eigen::VectorXd::Constant(n, 1.0 / n);
        if (wnorm2 > 1e-30) e -= (2.0 * w.dot(e) / wnorm2) * w;
        normals.row(k) = e.head(d).transpose();
    }
    return normalize(normals, Eigen::VectorXd::Ones(n));
}

}  // namespace detail

// Deterministic polytope families for tests and corpora. Every returned
// polytope is verified bounded.
inline HPolytope generate(const GeneratorSpec& spec) {
    if (spec.dim < 1) throw ValidationError("generator dimension must be >= 1");
    RandomStream rng(spec.seed);

    auto finish = [](HPolytope p) {
        if (!is_bounded(p)) throw GenerationFailed(1);
        return p;
    };

    switch (spec.family) {
        case Family::Cube:
            return finish(detail::cube_polytope(spec.dim));
        case Family::RegularSimplex:
            return finish(detail::regular_simplex_polytope(spec.dim));
        case Family::Slab: {
            if (spec.epsilon <= 0.0) throw ValidationError("slab epsilon must be positive");
            HPolytope p = detail::cube_polytope(spec.dim);
            p.offsets(spec.dim - 1) = spec.epsilon;
            p.offsets(2 * spec.dim - 1) = spec.epsilon;
            return finish(p);
        }
        case Family::RotatedCube: {
            const Eigen::MatrixXd q = rng.orthogonal_matrix(spec.dim);
            return finish(normalize(rotate(detail::cube_polytope(spec.dim), q)));
        }
        case Family::TangentBall: {
            const int m = spec.num_facets > 0 ? spec.num_facets : 2 * spec.dim;
            if (m < spec.dim + 1)
                throw ValidationError("tangent-ball family needs at least d+1 facets");
            for (int attempt = 0; attempt < kGenerationAttempts; ++attempt) {
                Eigen::MatrixXd normals(m, spec.dim);
                for (int i = 0; i < m; ++i)
                    normals.row(i) = rng.unit_sphere_sample(spec.dim).transpose();
                HPolytope p = normalize(normals, Eigen::VectorXd::Ones(m));
                if (is_bounded(p)) return p;
            }
            throw GenerationFailed(kGenerationAttempts);
        }
        case Family::PerturbedSimplex: {
            if (spec.noise < 0.0) throw ValidationError("perturbation noise must be >= 0");
            for (int attempt = 0; attempt < kGenerationAttempts; ++attempt) {
                HPolytope base = detail::regular_simplex_polytope(spec.dim);
                Eigen::MatrixXd normals = base.normals;
                for (int i = 0; i < normals.rows(); ++i)
                    normals.row(i) += spec.noise * rng.gaussian_vector(spec.dim).transpose();
                HPolytope p = normalize(normals, base.offsets);
                if (is_bounded(p)) return p;
            }
            throw GenerationFailed(kGenerationAttempts);
        }
    }
    throw ValidationError("unknown generator family");
}

// CLI-visible family names.
inline std::optional<Family> family_from_name(const std::string& name) {
    if (name == "cube") return Family::Cube;
    if (name == "simplex") return Family::RegularSimplex;
    if (name == "slab") return Family::Slab;
    if (name == "tangent-ball") return Family::TangentBall;
    if (name == "rotated-cube") return Family::RotatedCube;
    if (name == "perturbed-simplex") return Family::PerturbedSimplex;
    return std::nullopt;
}

}  // namespace polyround

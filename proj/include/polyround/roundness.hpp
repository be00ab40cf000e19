#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <string>
#include <vector>

#include "polyround/lp.hpp"
#include "polyround/polytope.hpp"
#include "polyround/svd.hpp"

namespace polyround {

// Joint roundness metrics of one polytope. delta = inradius / diameter lies
// in [0, 1/2]; bound_margin = sigma_min - delta stays strictly positive for
// full-dimensional inputs.
struct RoundnessReport {
    double inradius = 0.0;
    Eigen::VectorXd chebyshev_center;
    double diameter = 0.0;
    double delta = 0.0;
    double sigma_min = 0.0;
    double bound_margin = 0.0;
    bool full_dimensional = false;
};

// Numerical re-trace of the bound's construction, in coordinates where the
// Chebyshev center is the origin: the segment [f g] cut out of the polytope
// by the last right singular direction v_d, the facets i and j met by its
// endpoints, and the right-triangle comparison values.
struct BoundWitness {
    Eigen::VectorXd v_d;
    double lambda1 = 0.0;  // positive endpoint scale, f = lambda1 * v_d
    double lambda2 = 0.0;  // negative endpoint scale, g = lambda2 * v_d
    Eigen::VectorXd f;
    Eigen::VectorXd g;
    int facet_i = -1;  // tight at f
    int facet_j = -1;  // tight at g
    Eigen::VectorXd image_f;  // A f
    Eigen::VectorXd image_g;  // A g
    Eigen::VectorXd b_prime;  // A g with coordinate facet_i replaced by b_i
    double lhs_chain = 0.0;   // sigma_min * |lambda1 - lambda2|
    double mid_chain = 0.0;   // b_i * (1 + |lambda2 / lambda1|)
    double rhs_chain = 0.0;   // b_i
    double sigma_min = 0.0;
    double inradius = 0.0;
    double diameter = 0.0;
};

struct ChainCheck {
    std::string name;
    bool pass = false;
    double lhs = 0.0;
    double rhs = 0.0;
};

struct ReconstructionCertificate {
    bool delta_positive = false;
    double sigma_min_lower_bound = 0.0;
};

namespace detail {

inline double diameter_of_points(const std::vector<Eigen::VectorXd>& pts) {
    double best = 0.0;
    for (std::size_t i = 0; i < pts.size(); ++i)
        for (std::size_t j = i + 1; j < pts.size(); ++j)
            best = std::max(best, (pts[i] - pts[j]).norm());
    return best;
}

}  // namespace detail

// Inradius, diameter, delta and sigma_min of a bounded polytope with
// normalized, irredundant rows. Flat inputs (inradius ~ 0) report delta = 0
// and full_dimensional = false.
inline RoundnessReport analyze(const HPolytope& p) {
    RoundnessReport rep;
    const auto [center, radius] = chebyshev(p);
    rep.inradius = radius;
    rep.chebyshev_center = center;
    rep.full_dimensional = radius > tol::interiority;

    if (rep.full_dimensional) {
        rep.diameter = diameter(enumerate_vertices(p));
        rep.delta = rep.inradius / rep.diameter;
    } else {
        // flat polytopes may have fewer than d+1 vertices; take what exists
        rep.diameter = detail::diameter_of_points(detail::vertex_points(p));
        rep.delta = 0.0;
    }
    rep.sigma_min = sigma_min(p.normals);
    rep.bound_margin = rep.sigma_min - rep.delta;
    return rep;
}

// Evaluate the witness quantities for the delta < sigma_min bound. The input
// is recentered on its Chebyshev center internally.
inline BoundWitness extract_witness(const HPolytope& p) {
    const auto [center, radius] = chebyshev(p);
    if (radius <= tol::interiority) throw NotFullDimensional();
    const HPolytope pc = translate(p, -center);

    const SvdResult s = svd(pc.normals);
    const int d = pc.dim();
    const Eigen::VectorXd v_d = s.right_vectors.col(d - 1);
    const Eigen::VectorXd dots = pc.normals * v_d;

    // first hyperplane hit along +v_d and along -v_d (lowest index on ties)
    constexpr double direction_tol = 1e-12;
    double lambda1 = 0.0, lambda2 = 0.0;
    int facet_i = -1, facet_j = -1;
    for (int i = 0; i < pc.num_constraints(); ++i) {
        if (dots(i) > direction_tol) {
            const double step = pc.offsets(i) / dots(i);
            if (facet_i < 0 || step < lambda1) { lambda1 = step; facet_i = i; }
        } else if (dots(i) < -direction_tol) {
            const double step = pc.offsets(i) / dots(i);  // negative
            if (facet_j < 0 || step > lambda2) { lambda2 = step; facet_j = i; }
        }
    }
    if (facet_i < 0 || facet_j < 0) throw DegenerateDirection();

    BoundWitness w;
    w.v_d = v_d;
    w.lambda1 = lambda1;
    w.lambda2 = lambda2;
    w.f = lambda1 * v_d;
    w.g = lambda2 * v_d;
    w.facet_i = facet_i;
    w.facet_j = facet_j;
    w.image_f = pc.normals * w.f;
    w.image_g = pc.normals * w.g;
    w.b_prime = w.image_g;
    w.b_prime(facet_i) = pc.offsets(facet_i);
    w.sigma_min = s.sigma_min();
    w.inradius = radius;
    w.diameter = diameter(enumerate_vertices(pc));

    const double b_i = pc.offsets(facet_i);
    w.lhs_chain = w.sigma_min * std::abs(lambda1 - lambda2);
    w.mid_chain = b_i * (1.0 + std::abs(lambda2 / lambda1));
    w.rhs_chain = b_i;
    return w;
}

// The inequality chain behind the bound, one named check per relation.
inline std::vector<ChainCheck> chain_checks(const BoundWitness& w) {
    std::vector<ChainCheck> checks;
    auto add = [&](const std::string& name, bool pass, double lhs, double rhs) {
        checks.push_back({name, pass, lhs, rhs});
    };
    add("sign_opposition", (w.lambda1 > 0.0 && w.lambda2 < 0.0) ||
                           (w.lambda1 < 0.0 && w.lambda2 > 0.0),
        w.lambda1, w.lambda2);
    add("distinct_facets", w.facet_i != w.facet_j, w.facet_i, w.facet_j);
    const double seg = (w.f - w.g).norm();
    add("segment_length", std::abs(seg - std::abs(w.lambda1 - w.lambda2)) <= 1e-9, seg,
        std::abs(w.lambda1 - w.lambda2));
    const double img = (w.image_f - w.image_g).norm();
    add("image_length", std::abs(img - w.sigma_min * seg) <= 1e-8, img, w.sigma_min * seg);
    add("hypotenuse_exceeds_leg", w.lhs_chain > w.mid_chain - 1e-9, w.lhs_chain, w.mid_chain);
    add("leg_exceeds_offset", w.mid_chain > w.rhs_chain - 1e-9, w.mid_chain, w.rhs_chain);
    add("diameter_bound", w.sigma_min * w.diameter > w.rhs_chain, w.sigma_min * w.diameter,
        w.rhs_chain);
    add("offset_geq_inradius", w.rhs_chain >= w.inradius - 1e-9, w.rhs_chain, w.inradius);
    return checks;
}

inline bool all_checks_pass(const std::vector<ChainCheck>& checks) {
    for (const auto& c : checks)
        if (!c.pass) return false;
    return true;
}

// delta > 0 certifies a unique flux reconstruction; delta itself is then a
// valid lower bound on sigma_min.
inline ReconstructionCertificate certify_reconstruction(const RoundnessReport& rep) {
    ReconstructionCertificate cert;
    cert.delta_positive = rep.delta > tol::interiority;
    cert.sigma_min_lower_bound = rep.delta;
    return cert;
}

inline ReconstructionCertificate certify_reconstruction(const HPolytope& p) {
    return certify_reconstruction(analyze(p));
}

}  // namespace polyround

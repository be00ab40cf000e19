#pragma once

#include <Eigen/Dense>
#include <vector>

#include "polyround/errors.hpp"

namespace polyround {

namespace tol {
// Fixed tolerances; doubles with unit-normalized rows keep conditioning mild
// at the problem sizes this library targets.
inline constexpr double feasibility = 1e-9;   // absolute slack allowed on A x <= b
inline constexpr double tightness = 1e-8;     // |a_i.x - b_i| below this counts as active
inline constexpr double interiority = 1e-10;  // offsets above this count as strictly positive
inline constexpr double row_norm = 1e-12;     // rows at or below this cannot be normalized

inline double vertex_dedupe(const Eigen::VectorXd& offsets) {
    return 1e-7 * (1.0 + offsets.cwiseAbs().maxCoeff());
}
}  // namespace tol

// Convex polytope {x : A x <= b} with unit-norm rows of A (the outer unit
// normals) and offsets b. Build instances through normalize() or the
// generators so the unit-row invariant holds.
struct HPolytope {
    Eigen::MatrixXd normals;  // m x d
    Eigen::VectorXd offsets;  // m

    int dim() const { return static_cast<int>(normals.cols()); }
    int num_constraints() const { return static_cast<int>(normals.rows()); }
};

// Vertices of a bounded polytope together with the indices of the
// constraints tight at each vertex.
struct VertexSet {
    std::vector<Eigen::VectorXd> vertices;
    std::vector<std::vector<int>> active_sets;

    int size() const { return static_cast<int>(vertices.size()); }
};

// One facet F_i: its tight vertices (ordered for d = 3), its (d-1)-dimensional
// surface measure, and its centroid.
struct FacetGeometry {
    int facet_index = -1;
    std::vector<Eigen::VectorXd> vertices;
    double measure = 0.0;
    Eigen::VectorXd centroid;
};

// Scale every row to unit norm, dividing the offset by the same factor; the
// feasible set is unchanged. Throws NearZeroRow when a row cannot be scaled.
inline HPolytope normalize(const Eigen::MatrixXd& raw_normals,
                           const Eigen::VectorXd& raw_offsets) {
    const int m = static_cast<int>(raw_normals.rows());
    const int d = static_cast<int>(raw_normals.cols());
    if (m < 1 || d < 1)
        throw ValidationError("polytope needs at least one row and one dimension");
    if (raw_offsets.size() != m)
        throw ValidationError("offsets length does not match the number of rows");
    if (!raw_normals.allFinite() || !raw_offsets.allFinite())
        throw ValidationError("polytope data contains non-finite entries");

    HPolytope p;
    p.normals.resize(m, d);
    p.offsets.resize(m);
    for (int i = 0; i < m; ++i) {
        const double len = raw_normals.row(i).norm();
        if (len <= tol::row_norm) throw NearZeroRow(i);
        p.normals.row(i) = raw_normals.row(i) / len;
        p.offsets(i) = raw_offsets(i) / len;
    }
    return p;
}

inline HPolytope normalize(const HPolytope& p) { return normalize(p.normals, p.offsets); }

// The polytope shifted by t, i.e. {x + t : x in P}.
inline HPolytope translate(const HPolytope& p, const Eigen::VectorXd& t) {
    HPolytope out = p;
    out.offsets = p.offsets + p.normals * t;
    return out;
}

// The polytope rotated by the orthogonal matrix Q, i.e. {Q x : x in P}.
inline HPolytope rotate(const HPolytope& p, const Eigen::MatrixXd& q) {
    HPolytope out = p;
    out.normals = p.normals * q.transpose();
    return out;
}

}  // namespace polyround

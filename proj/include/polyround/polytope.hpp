#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "polyround/lp.hpp"
#include "polyround/types.hpp"

namespace polyround {

inline constexpr int kEnumerationCap = 40;  // brute-force subset limit
inline constexpr int kEnumerationMaxDim = 8;

// Bounded iff max +-x_k over the polytope is finite for every coordinate
// (2d LP calls); equivalently the recession cone {x : A x <= 0} is trivial.
inline bool is_bounded(const HPolytope& p) {
    const int d = p.dim();
    LpProblem lp;
    lp.constraint_matrix = p.normals;
    lp.rhs = p.offsets;
    lp.bounds.assign(d, VarSign::Free);
    for (int k = 0; k < d; ++k) {
        for (const double sign : {1.0, -1.0}) {
            lp.objective = Eigen::VectorXd::Zero(d);
            lp.objective(k) = sign;
            const LpSolution sol = solve_lp(lp);
            if (sol.status == LpStatus::Infeasible) throw InfeasibleSystem();
            if (sol.status == LpStatus::Unbounded) return false;
        }
    }
    return true;
}

// Origin strictly inside P iff every offset is strictly positive.
inline bool origin_interior(const HPolytope& p) {
    return (p.offsets.array() > tol::interiority).all();
}

namespace detail {

// All intersection points of d-subsets of constraints that are feasible,
// deduplicated. No minimum-count check here; callers decide what a shortfall
// means.
inline std::vector<Eigen::VectorXd> vertex_points(const HPolytope& p) {
    const int m = p.num_constraints();
    const int d = p.dim();
    if (m > kEnumerationCap) throw TooManyConstraints(m, kEnumerationCap);
    if (d > kEnumerationMaxDim)
        throw UnsupportedDimension(d, "brute-force vertex enumeration");

    const double dedupe = tol::vertex_dedupe(p.offsets);
    std::vector<Eigen::VectorXd> found;
    if (m < d) return found;

    std::vector<int> idx(d);
    std::iota(idx.begin(), idx.end(), 0);
    Eigen::MatrixXd block(d, d);
    Eigen::VectorXd rhs(d);
    for (;;) {
        for (int r = 0; r < d; ++r) {
            block.row(r) = p.normals.row(idx[r]);
            rhs(r) = p.offsets(idx[r]);
        }
        Eigen::FullPivLU<Eigen::MatrixXd> lu(block);
        if (lu.isInvertible()) {
            const Eigen::VectorXd x = lu.solve(rhs);
            if (((p.normals * x - p.offsets).array() <= tol::feasibility).all()) {
                bool fresh = true;
                for (const auto& v : found)
                    if ((v - x).norm() <= dedupe) { fresh = false; break; }
                if (fresh) found.push_back(x);
            }
        }
        // next d-combination of {0..m-1}
        int j = d - 1;
        while (j >= 0 && idx[j] == m - d + j) --j;
        if (j < 0) break;
        ++idx[j];
        for (int r = j + 1; r < d; ++r) idx[r] = idx[r - 1] + 1;
    }
    return found;
}

inline std::vector<int> active_rows(const HPolytope& p, const Eigen::VectorXd& v) {
    std::vector<int> act;
    for (int i = 0; i < p.num_constraints(); ++i)
        if (std::abs(p.normals.row(i).dot(v) - p.offsets(i)) <= tol::tightness)
            act.push_back(i);
    return act;
}

}  // namespace detail

// Brute-force vertex enumeration over d-subsets of the constraints.
inline VertexSet enumerate_vertices(const HPolytope& p) {
    VertexSet vs;
    vs.vertices = detail::vertex_points(p);
    if (static_cast<int>(vs.vertices.size()) < p.dim() + 1)
        throw DegeneratePolytope(static_cast<int>(vs.vertices.size()), p.dim());
    vs.active_sets.reserve(vs.vertices.size());
    for (const auto& v : vs.vertices) vs.active_sets.push_back(detail::active_rows(p, v));
    return vs;
}

// Max pairwise Euclidean distance; the max over the polytope is attained at
// vertices.
inline double diameter(const VertexSet& vs) {
    const int n = vs.size();
    if (n < 2) throw NotEnoughVertices();
    double best = 0.0;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            best = std::max(best, (vs.vertices[i] - vs.vertices[j]).norm());
    return best;
}

// Drop every row whose removal leaves the feasible set unchanged (LP test).
// Rows are scanned from the highest index down so duplicate rows keep the
// lowest-index copy.
inline HPolytope remove_redundant(const HPolytope& p) {
    const int m = p.num_constraints();
    const int d = p.dim();

    {
        LpProblem probe;
        probe.constraint_matrix = p.normals;
        probe.rhs = p.offsets;
        probe.objective = Eigen::VectorXd::Zero(d);
        probe.bounds.assign(d, VarSign::Free);
        if (solve_lp(probe).status == LpStatus::Infeasible) throw InfeasibleSystem();
    }

    std::vector<int> kept(m);
    std::iota(kept.begin(), kept.end(), 0);
    for (int pos = m - 1; pos >= 0; --pos) {
        if (kept.size() <= 1) break;
        const int row = kept[pos];
        LpProblem test;
        test.constraint_matrix.resize(static_cast<int>(kept.size()) - 1, d);
        test.rhs.resize(static_cast<int>(kept.size()) - 1);
        int r = 0;
        for (const int other : kept) {
            if (other == row) continue;
            test.constraint_matrix.row(r) = p.normals.row(other);
            test.rhs(r) = p.offsets(other);
            ++r;
        }
        test.objective = p.normals.row(row).transpose();
        test.bounds.assign(d, VarSign::Free);
        const LpSolution sol = solve_lp(test);
        if (sol.status == LpStatus::Optimal && sol.optimum <= p.offsets(row) + tol::feasibility)
            kept.erase(kept.begin() + pos);
    }

    HPolytope out;
    out.normals.resize(static_cast<int>(kept.size()), d);
    out.offsets.resize(static_cast<int>(kept.size()));
    for (int r = 0; r < static_cast<int>(kept.size()); ++r) {
        out.normals.row(r) = p.normals.row(kept[r]);
        out.offsets(r) = p.offsets(kept[r]);
    }
    return out;
}

namespace detail {

// Orthonormal in-plane basis for the hyperplane with unit normal a, built by
// Gram-Schmidt on the two standard basis vectors least aligned with a.
inline std::pair<Eigen::Vector3d, Eigen::Vector3d> facet_plane_basis(const Eigen::Vector3d& a) {
    int k1 = 0, k2 = 1;
    Eigen::Vector3d mags = a.cwiseAbs();
    if (mags(k2) < mags(k1)) std::swap(k1, k2);
    for (int k = 2; k < 3; ++k) {
        if (mags(k) < mags(k1)) { k2 = k1; k1 = k; }
        else if (mags(k) < mags(k2)) k2 = k;
    }
    Eigen::Vector3d u = Eigen::Vector3d::Unit(k1) - a(k1) * a;
    u.normalize();
    Eigen::Vector3d w = Eigen::Vector3d::Unit(k2) - a(k2) * a;
    w -= u.dot(Eigen::Vector3d::Unit(k2)) * u;
    w.normalize();
    return {u, w};
}

}  // namespace detail

// Geometry of facet i: its tight vertices, surface measure and centroid.
// d = 2: segment length and midpoint. d = 3: vertices angularly ordered in
// the facet plane, fan-triangulated area, and area-weighted centroid.
inline FacetGeometry facet_geometry(const HPolytope& p, const VertexSet& vs, int facet) {
    const int d = p.dim();
    if (d != 2 && d != 3) throw UnsupportedDimension(d, "facet geometry");
    if (facet < 0 || facet >= p.num_constraints())
        throw ValidationError("facet index out of range");

    std::vector<Eigen::VectorXd> tight;
    for (const auto& v : vs.vertices)
        if (std::abs(p.normals.row(facet).dot(v) - p.offsets(facet)) <= tol::tightness)
            tight.push_back(v);

    FacetGeometry fg;
    fg.facet_index = facet;

    if (d == 2) {
        if (tight.size() < 2) throw NotAFacet(facet);
        const Eigen::Vector2d a = p.normals.row(facet).transpose();
        const Eigen::Vector2d along(-a(1), a(0));
        std::sort(tight.begin(), tight.end(),
                  [&](const Eigen::VectorXd& x, const Eigen::VectorXd& y) {
                      return along.dot(x) < along.dot(y);
                  });
        fg.vertices = {tight.front(), tight.back()};
        fg.measure = (tight.back() - tight.front()).norm();
        fg.centroid = 0.5 * (tight.front() + tight.back());
        if (fg.measure <= 0.0) throw NotAFacet(facet);
        return fg;
    }

    if (tight.size() < 3) throw NotAFacet(facet);
    const Eigen::Vector3d a = p.normals.row(facet).transpose();
    const auto [u, w] = detail::facet_plane_basis(a);
    Eigen::Vector3d mean = Eigen::Vector3d::Zero();
    for (const auto& v : tight) mean += v;
    mean /= static_cast<double>(tight.size());
    std::sort(tight.begin(), tight.end(),
              [&](const Eigen::VectorXd& x, const Eigen::VectorXd& y) {
                  const Eigen::Vector3d dx = x - mean, dy = y - mean;
                  return std::atan2(w.dot(dx), u.dot(dx)) < std::atan2(w.dot(dy), u.dot(dy));
              });

    double area = 0.0;
    Eigen::Vector3d weighted = Eigen::Vector3d::Zero();
    const Eigen::Vector3d v0 = tight[0];
    for (std::size_t j = 1; j + 1 < tight.size(); ++j) {
        const Eigen::Vector3d v1 = tight[j], v2 = tight[j + 1];
        const double tri = 0.5 * ((v1 - v0).cross(v2 - v0)).norm();
        area += tri;
        weighted += tri * (v0 + v1 + v2) / 3.0;
    }
    if (area <= 0.0) throw NotAFacet(facet);
    fg.vertices = tight;
    fg.measure = area;
    fg.centroid = weighted / area;
    return fg;
}

// H-representation of the simplex with the given (d+1) x d vertex matrix:
// each facet hyperplane passes through d of the vertices, with the normal
// oriented away from the omitted one.
inline HPolytope simplex_to_hrep(const Eigen::MatrixXd& vertices) {
    const int d = static_cast<int>(vertices.cols());
    if (d < 1 || vertices.rows() != d + 1)
        throw ValidationError("simplex needs exactly d+1 vertices of dimension d");
    if (!vertices.allFinite()) throw ValidationError("simplex vertices contain non-finite entries");

    Eigen::MatrixXd normals(d + 1, d);
    Eigen::VectorXd offsets(d + 1);
    for (int k = 0; k <= d; ++k) {
        int r0 = (k == 0) ? 1 : 0;
        const Eigen::VectorXd base = vertices.row(r0).transpose();
        Eigen::VectorXd normal(d);
        if (d == 1) {
            normal(0) = 1.0;
        } else {
            Eigen::MatrixXd diffs(d, d - 1);
            int c = 0;
            for (int r = 0; r <= d; ++r) {
                if (r == k || r == r0) continue;
                diffs.col(c++) = vertices.row(r).transpose() - base;
            }
            const Eigen::HouseholderQR<Eigen::MatrixXd> qr(diffs);
            normal = qr.householderQ() * Eigen::VectorXd::Unit(d, d - 1);
        }
        const double side = normal.dot(vertices.row(k).transpose() - base);
        if (std::abs(side) <= 1e-12 * (1.0 + vertices.cwiseAbs().maxCoeff()))
            throw ValidationError("degenerate simplex: vertices are affinely dependent");
        if (side > 0.0) normal = -normal;
        normals.row(k) = normal.transpose();
        offsets(k) = normal.dot(base);
    }
    return normalize(normals, offsets);
}

}  // namespace polyround

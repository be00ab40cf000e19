#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "polyround/errors.hpp"

namespace polyround {

// Thin SVD A = U diag(sigma) V^T with singular values sorted descending,
// V orthogonal d x d, U with orthonormal columns m x d.
struct SvdResult {
    Eigen::VectorXd singular_values;
    Eigen::MatrixXd right_vectors;  // V, d x d
    Eigen::MatrixXd left_vectors;   // U, m x d

    double sigma_min() const { return singular_values(singular_values.size() - 1); }
};

namespace detail {

inline constexpr int kJacobiMaxSweeps = 30;

// Fill column j of U with a unit vector orthogonal to all earlier usable
// columns; used to complete U when sigma_j is numerically zero.
inline void complete_left_column(Eigen::MatrixXd& u, int j, const std::vector<bool>& usable) {
    const int m = static_cast<int>(u.rows());
    int best_k = -1;
    double best_norm = -1.0;
    Eigen::VectorXd best;
    for (int k = 0; k < m; ++k) {
        Eigen::VectorXd cand = Eigen::VectorXd::Unit(m, k);
        for (int c = 0; c < u.cols(); ++c)
            if (usable[c]) cand -= u.col(c).dot(cand) * u.col(c);
        const double norm = cand.norm();
        if (norm > best_norm) {
            best_norm = norm;
            best_k = k;
            best = cand;
        }
    }
    if (best_k < 0 || best_norm <= 0.0)
        throw NoConvergence("cannot complete an orthonormal left basis");
    u.col(j) = best / best_norm;
}

}  // namespace detail

// One-sided Jacobi SVD: rotate column pairs of a working copy of A until all
// off-diagonal Gram entries fall below 1e-12 * |A|_F^2. Sign convention: the
// first largest-magnitude component of each right vector is nonnegative.
inline SvdResult svd(const Eigen::MatrixXd& a) {
    const int m = static_cast<int>(a.rows());
    const int d = static_cast<int>(a.cols());
    if (m < d || d < 1) throw ValidationError("svd expects an m x d matrix with m >= d >= 1");
    if (!a.allFinite()) throw ValidationError("svd input contains non-finite entries");

    Eigen::MatrixXd w = a;                              // columns converge to sigma_j * u_j
    Eigen::MatrixXd v = Eigen::MatrixXd::Identity(d, d);
    const double frob2 = a.squaredNorm();
    const double off_tol = 1e-12 * frob2;

    bool converged = (d == 1);
    for (int sweep = 0; sweep < detail::kJacobiMaxSweeps && !converged; ++sweep) {
        converged = true;
        for (int p = 0; p < d - 1; ++p) {
            for (int q = p + 1; q < d; ++q) {
                const double gamma = w.col(p).dot(w.col(q));
                if (std::abs(gamma) <= off_tol) continue;
                converged = false;
                const double alpha = w.col(p).squaredNorm();
                const double beta = w.col(q).squaredNorm();
                const double zeta = (beta - alpha) / (2.0 * gamma);
                const double t = (zeta >= 0.0 ? 1.0 : -1.0) /
                                 (std::abs(zeta) + std::sqrt(1.0 + zeta * zeta));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = c * t;
                const Eigen::VectorXd wp = w.col(p);
                w.col(p) = c * wp - s * w.col(q);
                w.col(q) = s * wp + c * w.col(q);
                const Eigen::VectorXd vp = v.col(p);
                v.col(p) = c * vp - s * v.col(q);
                v.col(q) = s * vp + c * v.col(q);
            }
        }
    }
    if (!converged)
        throw NoConvergence("one-sided Jacobi did not converge within the sweep cap");

    Eigen::VectorXd sigma(d);
    for (int j = 0; j < d; ++j) sigma(j) = w.col(j).norm();

    std::vector<int> order(d);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](int i, int j) { return sigma(i) > sigma(j); });

    SvdResult out;
    out.singular_values.resize(d);
    out.right_vectors.resize(d, d);
    out.left_vectors.resize(m, d);

    const double rank_tol = 1e-14 * (std::sqrt(frob2) + 1.0);
    std::vector<bool> usable(d, false);
    for (int j = 0; j < d; ++j) {
        const int src = order[j];
        out.singular_values(j) = sigma(src);
        out.right_vectors.col(j) = v.col(src);
        if (sigma(src) > rank_tol) {
            out.left_vectors.col(j) = w.col(src) / sigma(src);
            usable[j] = true;
        }
    }
    for (int j = 0; j < d; ++j) {
        if (usable[j]) continue;
        detail::complete_left_column(out.left_vectors, j, usable);
        usable[j] = true;
    }

    for (int j = 0; j < d; ++j) {
        int arg = 0;
        for (int r = 1; r < d; ++r)
            if (std::abs(out.right_vectors(r, j)) > std::abs(out.right_vectors(arg, j))) arg = r;
        if (out.right_vectors(arg, j) < 0.0) {
            out.right_vectors.col(j) = -out.right_vectors.col(j);
            out.left_vectors.col(j) = -out.left_vectors.col(j);
        }
    }
    return out;
}

namespace detail {

// Closed-form singular values of a 2-column matrix via the eigenvalues of the
// 2x2 Gram matrix.
inline std::pair<double, double> singular_values_2x2(const Eigen::MatrixXd& a) {
    const Eigen::Matrix2d g = a.transpose() * a;
    const double mean = 0.5 * (g(0, 0) + g(1, 1));
    const double disc = std::sqrt(std::max(
        0.0, 0.25 * (g(0, 0) - g(1, 1)) * (g(0, 0) - g(1, 1)) + g(0, 1) * g(0, 1)));
    const double lo = std::max(0.0, mean - disc);
    const double hi = std::max(0.0, mean + disc);
    return {std::sqrt(hi), std::sqrt(lo)};
}

}  // namespace detail

// Smallest singular value. For d = 2 the Jacobi value is cross-checked
// against the closed-form Gram eigenvalues.
inline double sigma_min(const Eigen::MatrixXd& a) {
    const SvdResult s = svd(a);
    const double value = s.sigma_min();
    if (a.cols() == 2) {
        const auto [hi, lo] = detail::singular_values_2x2(a);
        (void)hi;
        if (std::abs(value - lo) > 1e-10 * (1.0 + s.singular_values(0)))
            throw NoConvergence("Jacobi sigma_min disagrees with the 2x2 closed form");
    }
    return value;
}

}  // namespace polyround

#pragma once

#include <Eigen/Dense>
#include <limits>
#include <utility>
#include <vector>

#include "polyround/types.hpp"

namespace polyround {

enum class VarSign { Free, NonNegative };
enum class LpStatus { Optimal, Unbounded, Infeasible };

// max objective.x  subject to  constraint_matrix.x <= rhs  and the per-variable
// sign restrictions in bounds (empty bounds means every variable is free).
struct LpProblem {
    Eigen::VectorXd objective;
    Eigen::MatrixXd constraint_matrix;
    Eigen::VectorXd rhs;
    std::vector<VarSign> bounds;
};

struct LpSolution {
    LpStatus status = LpStatus::Infeasible;
    double optimum = -std::numeric_limits<double>::infinity();
    Eigen::VectorXd point;
    std::vector<int> tight_rows;  // rows with slack <= 1e-8 at the optimum
};

namespace detail {

inline constexpr double kOptTol = 1e-9;    // reduced-cost threshold
inline constexpr double kPivotTol = 1e-11; // smallest usable pivot element
inline constexpr double kRatioTol = 1e-9;  // ratio-test tie window

struct Tableau {
    Eigen::MatrixXd t;       // k x ncols, kept in Gauss-Jordan form
    Eigen::VectorXd rhs;     // k, nonnegative up to roundoff
    std::vector<int> basis;  // basic column of each row
    int k = 0;
};

// Pivot on (row, col), updating the reduced-cost row and objective value.
inline void pivot(Tableau& tab, Eigen::RowVectorXd& red, double& value, int row, int col) {
    const double piv = tab.t(row, col);
    tab.t.row(row) /= piv;
    tab.rhs(row) /= piv;
    tab.t(row, col) = 1.0;
    for (int i = 0; i < tab.k; ++i) {
        if (i == row) continue;
        const double f = tab.t(i, col);
        if (f == 0.0) continue;
        tab.t.row(i) -= f * tab.t.row(row);
        tab.rhs(i) -= f * tab.rhs(row);
        tab.t(i, col) = 0.0;
    }
    const double g = red(col);
    if (g != 0.0) {
        red -= g * tab.t.row(row);
        value += g * tab.rhs(row);
        red(col) = 0.0;
    }
    tab.basis[row] = col;
}

enum class LoopResult { Optimal, Unbounded, IterationCap };

// One simplex phase. Dantzig pricing until the degenerate-pivot budget is
// spent, then Bland's rule for guaranteed termination.
inline LoopResult simplex_loop(Tableau& tab, Eigen::RowVectorXd& red, double& value,
                               const std::vector<bool>& can_enter, long degenerate_budget,
                               long iter_cap) {
    const int ncols = static_cast<int>(red.size());
    long iters = 0;
    long degenerate = 0;
    bool bland = false;
    for (;;) {
        if (++iters > iter_cap) return LoopResult::IterationCap;

        int enter = -1;
        if (bland) {
            for (int j = 0; j < ncols; ++j)
                if (can_enter[j] && red(j) > kOptTol) { enter = j; break; }
        } else {
            double best = kOptTol;
            for (int j = 0; j < ncols; ++j)
                if (can_enter[j] && red(j) > best) { best = red(j); enter = j; }
        }
        if (enter < 0) return LoopResult::Optimal;

        double min_ratio = std::numeric_limits<double>::infinity();
        for (int i = 0; i < tab.k; ++i) {
            const double a = tab.t(i, enter);
            if (a <= kPivotTol) continue;
            min_ratio = std::min(min_ratio, tab.rhs(i) / a);
        }
        if (!std::isfinite(min_ratio)) return LoopResult::Unbounded;

        // among rows within the tie window, leave the smallest basis index
        int row = -1;
        for (int i = 0; i < tab.k; ++i) {
            const double a = tab.t(i, enter);
            if (a <= kPivotTol) continue;
            if (tab.rhs(i) / a > min_ratio + kRatioTol) continue;
            if (row < 0 || tab.basis[i] < tab.basis[row]) row = i;
        }
        if (min_ratio <= kRatioTol && ++degenerate > degenerate_budget) bland = true;
        pivot(tab, red, value, row, enter);
    }
}

}  // namespace detail

// Dense two-phase simplex.
inline LpSolution solve_lp(const LpProblem& problem) {
    using namespace detail;

    const int k = static_cast<int>(problem.constraint_matrix.rows());
    const int n = static_cast<int>(problem.constraint_matrix.cols());
    if (k < 1 || n < 1) throw ValidationError("LP needs at least one row and one variable");
    if (problem.objective.size() != n || problem.rhs.size() != k)
        throw ValidationError("LP objective/rhs sizes do not match the constraint matrix");
    if (!problem.constraint_matrix.allFinite() || !problem.objective.allFinite() ||
        !problem.rhs.allFinite())
        throw ValidationError("LP data contains non-finite entries");
    std::vector<VarSign> bounds = problem.bounds;
    if (bounds.empty()) bounds.assign(n, VarSign::Free);
    if (static_cast<int>(bounds.size()) != n)
        throw ValidationError("LP bounds length does not match the variable count");

    // Split free variables into a nonnegative pair.
    std::vector<int> pos_col(n), neg_col(n, -1);
    int ns = 0;
    for (int j = 0; j < n; ++j) {
        pos_col[j] = ns++;
        if (bounds[j] == VarSign::Free) neg_col[j] = ns++;
    }

    std::vector<int> art_rows;
    for (int i = 0; i < k; ++i)
        if (problem.rhs(i) < 0.0) art_rows.push_back(i);
    const int na = static_cast<int>(art_rows.size());
    const int slack0 = ns;
    const int art0 = ns + k;
    const int ncols = ns + k + na;

    Tableau tab;
    tab.k = k;
    tab.t = Eigen::MatrixXd::Zero(k, ncols);
    tab.rhs.resize(k);
    tab.basis.assign(k, -1);
    for (int i = 0; i < k; ++i) {
        const double sign = problem.rhs(i) < 0.0 ? -1.0 : 1.0;
        for (int j = 0; j < n; ++j) {
            const double a = sign * problem.constraint_matrix(i, j);
            tab.t(i, pos_col[j]) = a;
            if (neg_col[j] >= 0) tab.t(i, neg_col[j]) = -a;
        }
        tab.t(i, slack0 + i) = sign;
        tab.rhs(i) = sign * problem.rhs(i);
        tab.basis[i] = slack0 + i;
    }
    for (int a = 0; a < na; ++a) {
        tab.t(art_rows[a], art0 + a) = 1.0;
        tab.basis[art_rows[a]] = art0 + a;
    }

    const long degenerate_budget = 3L * (k + n);
    const long iter_cap = 50L * (k + n);
    const double feas_tol = 1e-9 * (1.0 + problem.rhs.cwiseAbs().maxCoeff());

    std::vector<bool> can_enter(ncols, true);
    for (int a = 0; a < na; ++a) can_enter[art0 + a] = false;

    // Phase 1: maximize -(sum of artificials) up to zero.
    if (na > 0) {
        Eigen::RowVectorXd red = Eigen::RowVectorXd::Zero(ncols);
        double value = 0.0;
        for (int i : art_rows) {
            red += tab.t.row(i);
            value -= tab.rhs(i);
        }
        for (int a = 0; a < na; ++a) red(art0 + a) = 0.0;

        const LoopResult r = simplex_loop(tab, red, value, can_enter, degenerate_budget, iter_cap);
        if (r == LoopResult::IterationCap) throw NumericalStall(static_cast<int>(iter_cap));
        if (value < -feas_tol) {
            LpSolution sol;
            sol.status = LpStatus::Infeasible;
            return sol;
        }
        // Pivot any leftover zero-level artificials out of the basis.
        for (int i = 0; i < k; ++i) {
            if (tab.basis[i] < art0) continue;
            int best_col = -1;
            double best_abs = 1e-9;
            for (int j = 0; j < art0; ++j) {
                const double a = std::abs(tab.t(i, j));
                if (a > best_abs) { best_abs = a; best_col = j; }
            }
            if (best_col >= 0) pivot(tab, red, value, i, best_col);
            // otherwise the row is linearly dependent; its artificial stays
            // basic at level zero and can never re-enter elsewhere
        }
    }

    // Phase 2: the real objective over structural columns.
    Eigen::RowVectorXd cost = Eigen::RowVectorXd::Zero(ncols);
    for (int j = 0; j < n; ++j) {
        cost(pos_col[j]) = problem.objective(j);
        if (neg_col[j] >= 0) cost(neg_col[j]) = -problem.objective(j);
    }
    Eigen::RowVectorXd red = cost;
    double value = 0.0;
    for (int i = 0; i < k; ++i) {
        const double cb = cost(tab.basis[i]);
        if (cb != 0.0) {
            red -= cb * tab.t.row(i);
            value += cb * tab.rhs(i);
        }
    }

    const LoopResult r = simplex_loop(tab, red, value, can_enter, degenerate_budget, iter_cap);
    if (r == LoopResult::IterationCap) throw NumericalStall(static_cast<int>(iter_cap));

    LpSolution sol;
    if (r == LoopResult::Unbounded) {
        sol.status = LpStatus::Unbounded;
        sol.optimum = std::numeric_limits<double>::infinity();
        return sol;
    }

    Eigen::VectorXd col_value = Eigen::VectorXd::Zero(ncols);
    for (int i = 0; i < k; ++i) col_value(tab.basis[i]) = tab.rhs(i);
    sol.point.resize(n);
    for (int j = 0; j < n; ++j) {
        sol.point(j) = col_value(pos_col[j]);
        if (neg_col[j] >= 0) sol.point(j) -= col_value(neg_col[j]);
    }
    sol.status = LpStatus::Optimal;
    sol.optimum = problem.objective.dot(sol.point);
    const Eigen::VectorXd slack = problem.rhs - problem.constraint_matrix * sol.point;
    for (int i = 0; i < k; ++i)
        if (slack(i) <= tol::tightness) sol.tight_rows.push_back(i);
    return sol;
}

// Chebyshev center: max r subject to a_i.x + r <= b_i, r >= 0, for unit rows
// a_i. Returns the center and the inscribed-ball radius.
inline std::pair<Eigen::VectorXd, double> chebyshev(const HPolytope& p) {
    const int m = p.num_constraints();
    const int d = p.dim();

    LpProblem lp;
    lp.constraint_matrix.resize(m, d + 1);
    lp.constraint_matrix.leftCols(d) = p.normals;
    lp.constraint_matrix.col(d) = Eigen::VectorXd::Ones(m);
    lp.rhs = p.offsets;
    lp.objective = Eigen::VectorXd::Zero(d + 1);
    lp.objective(d) = 1.0;
    lp.bounds.assign(d, VarSign::Free);
    lp.bounds.push_back(VarSign::NonNegative);

    const LpSolution sol = solve_lp(lp);
    if (sol.status == LpStatus::Infeasible) throw InfeasibleSystem();
    if (sol.status == LpStatus::Unbounded) throw UnboundedRadius();
    return {sol.point.head(d), sol.optimum};
}

}  // namespace polyround

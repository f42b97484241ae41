#include "hyper_ricci/simplex.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>

namespace hyper_ricci {

namespace {

template <class S>
class Tableau {
public:
    // Rows 0..m-1 are constraints, row m is the objective (reduced costs, minimized form
    // stored as z - c^T x = 0 so that a negative entry means the column improves).
    Tableau(std::size_t m, std::size_t cols, S zero_tol)
        : m_(m), cols_(cols), t_(m + 1, cols + 1), basis_(m), row_ids_(m), zero_(zero_tol) {
        for (std::size_t r = 0; r < m; ++r) row_ids_[r] = r;
    }

    S& at(std::size_t r, std::size_t c) { return t_(r, c); }
    S& rhs(std::size_t r) { return t_(r, cols_); }
    std::size_t& basis(std::size_t r) { return basis_[r]; }
    std::size_t rows() const { return m_; }
    /// Original constraint index of each remaining row.
    const std::vector<std::size_t>& row_ids() const { return row_ids_; }
    const std::vector<std::size_t>& basis_columns() const { return basis_; }
    std::size_t cols() const { return cols_; }

    bool is_zero(const S& v) const {
        if constexpr (ScalarTraits<S>::exact) {
            return v == 0;
        } else {
            return abs_of(v) <= zero_;
        }
    }
    bool negative(const S& v) const { return v < S(0) && !is_zero(v); }
    bool positive(const S& v) const { return v > S(0) && !is_zero(v); }

    void pivot(std::size_t pr, std::size_t pc) {
        const S inv = S(1) / t_(pr, pc);
        for (std::size_t c = 0; c <= cols_; ++c) t_(pr, c) *= inv;
        t_(pr, pc) = S(1);
        for (std::size_t r = 0; r <= m_; ++r) {
            if (r == pr) continue;
            const S factor = t_(r, pc);
            if (factor == S(0)) continue;
            for (std::size_t c = 0; c <= cols_; ++c) {
                if (t_(pr, c) == S(0)) continue;
                t_(r, c) -= factor * t_(pr, c);
            }
            t_(r, pc) = S(0);
            if constexpr (!ScalarTraits<S>::exact) {
                if (r < m_ && t_(r, cols_) < S(0) && is_zero(t_(r, cols_))) t_(r, cols_) = S(0);
            }
        }
        basis_[pr] = pc;
    }

    /// Runs simplex iterations on the objective row over columns [0, active_cols).
    /// Returns false when unbounded.
    bool optimize(std::size_t active_cols, std::size_t& pivots) {
        std::size_t degenerate_run = 0;
        constexpr std::size_t kBlandAfter = 50;
        constexpr std::size_t kMaxPivots = 200000;
        while (pivots < kMaxPivots) {
            const bool bland = degenerate_run >= kBlandAfter;
            std::size_t enter = cols_;
            S best(0);
            for (std::size_t c = 0; c < active_cols; ++c) {
                const S& rc = t_(m_, c);
                if (!negative(rc)) continue;
                if (bland) {
                    enter = c;
                    break;
                }
                if (enter == cols_ || rc < best) {
                    best = rc;
                    enter = c;
                }
            }
            if (enter == cols_) return true;

            // Two-pass ratio test: the minimum ratio (rounding-negative right-hand
            // sides count as 0), then among rows tied with it the largest pivot,
            // or the smallest basic index under Bland's rule.
            S best_ratio(0);
            bool any = false;
            for (std::size_t r = 0; r < m_; ++r) {
                const S& a = t_(r, enter);
                if (!positive(a)) continue;
                const S ratio = clamped_rhs(r) / a;
                if (!any || ratio < best_ratio) best_ratio = ratio;
                any = true;
            }
            if (!any) return false;
            S slack(0);
            if constexpr (!ScalarTraits<S>::exact) slack = zero_ * (best_ratio > S(1) ? best_ratio : S(1));
            std::size_t leave = m_;
            for (std::size_t r = 0; r < m_; ++r) {
                const S& a = t_(r, enter);
                if (!positive(a)) continue;
                if (clamped_rhs(r) / a > best_ratio + slack) continue;
                if (leave == m_) {
                    leave = r;
                } else if (bland) {
                    if (basis_[r] < basis_[leave]) leave = r;
                } else if (a > t_(leave, enter) || (a == t_(leave, enter) && basis_[r] < basis_[leave])) {
                    leave = r;
                }
            }
            degenerate_run = is_zero(best_ratio) ? degenerate_run + 1 : 0;
            pivot(leave, enter);
            ++pivots;
        }
        throw SolverError("simplex: pivot limit reached");
    }

    S clamped_rhs(std::size_t r) const {
        const S& b = t_(r, cols_);
        return b < S(0) ? S(0) : b;
    }

    void drop_row(std::size_t r) {
        DenseMatrix<S> next(m_, cols_ + 1);
        std::size_t out = 0;
        for (std::size_t i = 0; i <= m_; ++i) {
            if (i == r) continue;
            for (std::size_t c = 0; c <= cols_; ++c) next(out, c) = t_(i, c);
            ++out;
        }
        t_ = std::move(next);
        basis_.erase(basis_.begin() + static_cast<std::ptrdiff_t>(r));
        row_ids_.erase(row_ids_.begin() + static_cast<std::ptrdiff_t>(r));
        --m_;
    }

private:
    std::size_t m_;
    std::size_t cols_;
    DenseMatrix<S> t_;
    std::vector<std::size_t> basis_;
    std::vector<std::size_t> row_ids_;
    S zero_;
};

template <class S>
struct TableauResult {
    LpSolution<S> solution;
    /// Final basis (column indices in the slack-augmented layout) and the rows it spans.
    std::vector<std::size_t> basis;
    std::vector<std::size_t> rows;
    std::vector<std::size_t> slack_col;
};

template <class S>
TableauResult<S> solve_tableau(const LinearProgram<S>& lp, double eps) {
    const std::size_t n = lp.num_vars;
    const std::size_t m = lp.rows.size();
    if (lp.objective.size() != n || lp.senses.size() != m || lp.rhs.size() != m)
        throw InvalidInput("malformed linear program");

    // Column layout: structural [0, n), slacks (one per inequality), artificials.
    std::vector<std::size_t> slack_col(m, std::numeric_limits<std::size_t>::max());
    std::size_t cols = n;
    for (std::size_t i = 0; i < m; ++i)
        if (lp.senses[i] != RowSense::Equal) slack_col[i] = cols++;
    const std::size_t first_artificial = cols;

    // Rows are flipped so that b >= 0; a row needs an artificial unless its slack has +1.
    std::vector<bool> flip(m, false);
    std::vector<bool> needs_artificial(m, false);
    std::size_t artificial_count = 0;
    for (std::size_t i = 0; i < m; ++i) {
        flip[i] = lp.rhs[i] < S(0);
        S slack_sign = lp.senses[i] == RowSense::LessEqual ? S(1) : S(-1);
        if (flip[i]) slack_sign = -slack_sign;
        needs_artificial[i] = lp.senses[i] == RowSense::Equal || slack_sign < S(0);
        if (needs_artificial[i]) ++artificial_count;
    }
    cols += artificial_count;

    S zero_tol(0);
    if constexpr (!ScalarTraits<S>::exact) zero_tol = S(eps);
    Tableau<S> tab(m, cols, zero_tol);
    std::size_t next_artificial = first_artificial;
    for (std::size_t i = 0; i < m; ++i) {
        const S sign = flip[i] ? S(-1) : S(1);
        for (std::size_t j = 0; j < n; ++j) tab.at(i, j) = sign * lp.rows[i][j];
        if (slack_col[i] != std::numeric_limits<std::size_t>::max())
            tab.at(i, slack_col[i]) = sign * (lp.senses[i] == RowSense::LessEqual ? S(1) : S(-1));
        tab.rhs(i) = sign * lp.rhs[i];
        if (needs_artificial[i]) {
            tab.at(i, next_artificial) = S(1);
            tab.basis(i) = next_artificial++;
        } else {
            tab.basis(i) = slack_col[i];
        }
    }

    LpSolution<S> sol;
    if (artificial_count > 0) {
        // Phase 1: minimize the sum of artificials, i.e. objective row = -sum of their rows.
        for (std::size_t c = 0; c <= cols; ++c) tab.at(m, c) = S(0);
        for (std::size_t i = 0; i < m; ++i) {
            if (!needs_artificial[i]) continue;
            for (std::size_t c = 0; c < first_artificial; ++c) tab.at(m, c) -= tab.at(i, c);
            tab.rhs(m) -= tab.rhs(i);
        }
        tab.optimize(first_artificial, sol.pivots);
        if (tab.negative(tab.rhs(tab.rows()))) {
            sol.status = LpStatus::Infeasible;
            return {sol, {}, {}, slack_col};
        }
        // Drive remaining artificials out of the basis; rows where that is impossible are redundant.
        for (std::size_t r = 0; r < tab.rows();) {
            if (tab.basis(r) < first_artificial) {
                ++r;
                continue;
            }
            std::size_t col = first_artificial;
            for (std::size_t c = 0; c < first_artificial; ++c) {
                if (!tab.is_zero(tab.at(r, c))) {
                    col = c;
                    break;
                }
            }
            if (col == first_artificial) {
                tab.drop_row(r);
            } else {
                tab.pivot(r, col);
                ++sol.pivots;
                ++r;
            }
        }
        for (std::size_t r = 0; r < tab.rows(); ++r)
            for (std::size_t c = first_artificial; c < cols; ++c) tab.at(r, c) = S(0);
    }

    // Phase 2 objective row: -c, then eliminate basic columns.
    const std::size_t obj = tab.rows();
    for (std::size_t c = 0; c <= cols; ++c) tab.at(obj, c) = S(0);
    for (std::size_t j = 0; j < n; ++j) tab.at(obj, j) = -lp.objective[j];
    for (std::size_t r = 0; r < tab.rows(); ++r) {
        const std::size_t b = tab.basis(r);
        const S factor = tab.at(obj, b);
        if (factor == S(0)) continue;
        for (std::size_t c = 0; c <= cols; ++c) tab.at(obj, c) -= factor * tab.at(r, c);
    }
    if (!tab.optimize(first_artificial, sol.pivots)) {
        sol.status = LpStatus::Unbounded;
        return {sol, {}, {}, slack_col};
    }

    sol.status = LpStatus::Optimal;
    sol.x.assign(n, S(0));
    for (std::size_t r = 0; r < tab.rows(); ++r)
        if (tab.basis(r) < n) sol.x[tab.basis(r)] = tab.rhs(r);
    if constexpr (!ScalarTraits<S>::exact) {
        for (auto& v : sol.x)
            if (v < 0.0) v = 0.0;
    }
    sol.value = S(0);
    for (std::size_t j = 0; j < n; ++j) sol.value += lp.objective[j] * sol.x[j];
    return {sol, tab.basis_columns(), tab.row_ids(), slack_col};
}

constexpr std::size_t kNoSlack = std::numeric_limits<std::size_t>::max();

/// Recomputes the final basic solution and its duals from the original data and
/// checks primal and dual feasibility. On success the refactored x replaces the
/// tableau's (which can carry pivot growth from degenerate steps).
bool certify(const LinearProgram<double>& lp, const TableauResult<double>& tr, LpSolution<double>& sol, double tol) {
    const std::size_t n = lp.num_vars, m = lp.rows.size(), k = tr.rows.size();
    if (tr.basis.size() != k) return false;
    std::vector<bool> kept(m, false);
    for (std::size_t r : tr.rows) kept[r] = true;
    for (std::size_t i = 0; i < m; ++i)
        if (!kept[i] && tr.slack_col[i] != kNoSlack) return false;
    // Column j of the slack-augmented matrix restricted to constraint row i.
    std::vector<std::size_t> slack_row(n + m, kNoSlack);
    for (std::size_t i = 0; i < m; ++i)
        if (tr.slack_col[i] != kNoSlack) slack_row[tr.slack_col[i]] = i;
    auto entry = [&](std::size_t i, std::size_t j) {
        if (j < n) return lp.rows[i][j];
        if (slack_row[j] != i) return 0.0;
        return lp.senses[i] == RowSense::LessEqual ? 1.0 : -1.0;
    };
    const auto kk = static_cast<Eigen::Index>(k);
    Eigen::MatrixXd b(kk, kk);
    Eigen::VectorXd rhs(kk), cb(kk);
    for (Eigen::Index r = 0; r < kk; ++r) {
        rhs(r) = lp.rhs[tr.rows[static_cast<std::size_t>(r)]];
        const std::size_t col = tr.basis[static_cast<std::size_t>(r)];
        cb(r) = col < n ? lp.objective[col] : 0.0;
        for (Eigen::Index c = 0; c < kk; ++c)
            b(r, c) = entry(tr.rows[static_cast<std::size_t>(r)], tr.basis[static_cast<std::size_t>(c)]);
    }
    Eigen::FullPivLU<Eigen::MatrixXd> lu(b);
    if (!lu.isInvertible()) return false;
    const Eigen::VectorXd xb = lu.solve(rhs);
    const Eigen::VectorXd y = lu.transpose().solve(cb);
    if (!xb.allFinite() || !y.allFinite()) return false;

    std::vector<double> x(n, 0.0);
    for (Eigen::Index r = 0; r < kk; ++r) {
        if (xb(r) < -tol * (1.0 + std::abs(xb(r)))) return false;
        const std::size_t col = tr.basis[static_cast<std::size_t>(r)];
        if (col < n) x[col] = std::max(xb(r), 0.0);
    }
    for (std::size_t i = 0; i < m; ++i) {
        double act = 0.0, mag = std::abs(lp.rhs[i]);
        for (std::size_t j = 0; j < n; ++j) {
            act += lp.rows[i][j] * x[j];
            mag += std::abs(lp.rows[i][j] * x[j]);
        }
        const double slack = tol * (1.0 + mag);
        if (lp.senses[i] != RowSense::GreaterEqual && act > lp.rhs[i] + slack) return false;
        if (lp.senses[i] != RowSense::LessEqual && act < lp.rhs[i] - slack) return false;
    }
    // Maximization: every reduced cost c_j - y^T A_j must be <= 0.
    for (std::size_t j = 0; j < n + m; ++j) {
        if (j >= n && slack_row[j] == kNoSlack) continue;
        double rc = j < n ? lp.objective[j] : 0.0, mag = std::abs(rc);
        for (Eigen::Index r = 0; r < kk; ++r) {
            const double a = entry(tr.rows[static_cast<std::size_t>(r)], j);
            rc -= y(r) * a;
            mag += std::abs(y(r) * a);
        }
        if (rc > tol * (1.0 + mag)) return false;
    }
    sol.x = std::move(x);
    sol.value = 0.0;
    for (std::size_t j = 0; j < n; ++j) sol.value += lp.objective[j] * sol.x[j];
    return true;
}

}  // namespace

template <>
LpSolution<Rational> solve_lp<Rational>(const LinearProgram<Rational>& lp, double eps) {
    return solve_tableau(lp, eps).solution;
}

template <>
LpSolution<double> solve_lp<double>(const LinearProgram<double>& lp, double eps) {
    auto tr = solve_tableau(lp, eps);
    if (tr.solution.status == LpStatus::Optimal && certify(lp, tr, tr.solution, 1e-9)) return tr.solution;
    // Degenerate pivots on tiny entries can wreck a float tableau; re-solve the
    // same program (every double converts exactly) in rational arithmetic.
    LinearProgram<Rational> exact(lp.num_vars);
    for (std::size_t j = 0; j < lp.num_vars; ++j) exact.objective[j] = Rational(lp.objective[j]);
    for (std::size_t i = 0; i < lp.rows.size(); ++i) {
        std::vector<Rational> row(lp.num_vars);
        for (std::size_t j = 0; j < lp.num_vars; ++j) row[j] = Rational(lp.rows[i][j]);
        exact.add_row(std::move(row), lp.senses[i], Rational(lp.rhs[i]));
    }
    const auto es = solve_tableau(exact, eps).solution;
    LpSolution<double> out;
    out.status = es.status;
    out.value = to_double(es.value);
    out.pivots = tr.solution.pivots + es.pivots;
    out.exact_fallback = true;
    for (const auto& v : es.x) out.x.push_back(to_double(v));
    return out;
}

}  // namespace hyper_ricci

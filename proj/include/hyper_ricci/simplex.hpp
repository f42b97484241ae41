#pragma once

#include "hyper_ricci/dense.hpp"
#include "hyper_ricci/errors.hpp"
#include "hyper_ricci/scalar.hpp"

#include <cstddef>
#include <vector>

namespace hyper_ricci {

enum class RowSense { LessEqual, Equal, GreaterEqual };

/// maximize c^T x  subject to  A_i x (sense_i) b_i,  x >= 0.
template <class S>
struct LinearProgram {
    std::size_t num_vars = 0;
    std::vector<S> objective;
    std::vector<std::vector<S>> rows;
    std::vector<RowSense> senses;
    std::vector<S> rhs;

    explicit LinearProgram(std::size_t n = 0) : num_vars(n), objective(n, S(0)) {}

    void add_row(std::vector<S> coeffs, RowSense sense, S b) {
        coeffs.resize(num_vars, S(0));
        rows.push_back(std::move(coeffs));
        senses.push_back(sense);
        rhs.push_back(std::move(b));
    }
};

enum class LpStatus { Optimal, Infeasible, Unbounded };

template <class S>
struct LpSolution {
    LpStatus status = LpStatus::Infeasible;
    S value = S(0);
    std::vector<S> x;
    std::size_t pivots = 0;
    /// The float tableau failed its refactored optimality check and the program
    /// was re-solved exactly.
    bool exact_fallback = false;
};

/// Two-phase dense tableau simplex. Dantzig pricing, switching to Bland's rule
/// after a run of degenerate pivots so that termination is guaranteed. Phase 1
/// is skipped when every row is `<=` with b >= 0 (the origin is feasible).
/// For double, `eps` is the zero tolerance; exact scalars ignore it. A double
/// solution is accepted only after its basis is refactored from the original
/// data and passes primal and dual feasibility at 1e-9 relative; otherwise the
/// program is solved again in exact arithmetic.
template <class S>
LpSolution<S> solve_lp(const LinearProgram<S>& lp, double eps = 1e-10);

}  // namespace hyper_ricci

#pragma once

#include "hyper_ricci/region.hpp"
#include "hyper_ricci/system.hpp"
#include "hyper_ricci/weak_order.hpp"

#include <optional>
#include <vector>

namespace hyper_ricci {

enum class ResolventMethod { Proximal, RegionExact };

const char* to_string(ResolventMethod method);

template <class S>
struct ResolventResult {
    /// J_lambda f
    BasicVertexFunction<S> g;
    /// (f - g) / lambda, a member of 𝓛 g up to optimality_gap
    BasicVertexFunction<S> residual;
    ResolventMethod method = ResolventMethod::Proximal;
    /// Weighted distance from residual to 𝓛 g. Exact scalars report the
    /// squared distance, which is 0 for every accepted region candidate.
    S optimality_gap = S(0);
    /// Region whose linear system produced g; empty for an unpolished first-order result.
    std::optional<WeakOrder> region;
};

/// Linear inverse on one region: D^{-1} J_lambda f = N f whenever J_lambda f lies
/// in the closure of the region. N is symmetric with nonnegative entries.
template <class S>
struct RegionMatrix {
    WeakOrder order;
    S lambda = S(0);
    DenseMatrix<S> n;
};

template <class S>
RegionMatrix<S> region_matrix(const HypergraphSystem& system, const WeakOrder& order, const S& lambda);

/// Solves the region's contracted system for f and accepts the result iff its
/// block values are non-increasing (closure of the region) and the residual is
/// certified to lie in 𝓛 g. Exact scalars decide both exactly.
template <class S>
std::optional<ResolventResult<S>> resolve_in_region(const HypergraphSystem& system, const BasicVertexFunction<S>& f,
                                                    const S& lambda, const WeakOrder& order);

struct RegionExactOptions {
    std::size_t cap = 8;
    /// Float candidates from different regions must agree to this relative tolerance.
    double agreement_tol = 1e-10;
};

/// J_lambda f by enumerating every weak order. Throws InvalidInput above the
/// cap and SolverError if no region is accepted or accepted regions disagree.
template <class S>
ResolventResult<S> resolve_region_exact(const HypergraphSystem& system, const BasicVertexFunction<S>& f,
                                        const S& lambda, const RegionExactOptions& options = {});

struct ProxOptions {
    /// Target for the residual membership distance and the dual gap.
    double tol = 1e-10;
    std::size_t max_iterations = 50000;
    /// Try to snap the first-order iterate onto an exactly solved region.
    bool polish = true;
    /// Region enumeration is the last resort for n <= cap.
    std::size_t cap = 8;
    /// A region to try before any iteration, e.g. the previous heat step's.
    const WeakOrder* hint = nullptr;
};

/// J_lambda f = argmin (1/2 lambda)|f - g|^2 + Q(D^{-1} g).
///
/// First-order path: accelerated projected gradient with restarts on the dual
///     max <Y, f> - (lambda/2)|Y|^2 - sum_e T_e^2 / (2 w_e),
///     Y = sum_e (mu_e - nu_e), mu_e >= 0 on tails, nu_e >= 0 on heads, |mu_e| = |nu_e| = T_e,
/// with primal recovery g = f - lambda Y and the duality gap as stopping rule.
/// With `polish`, iterates are periodically clustered into a weak order and
/// solved exactly on that region.
ResolventResult<double> resolve_prox(const HypergraphSystem& system, const VertexFunction& f, double lambda,
                                     const ProxOptions& options = {});

/// J_lambda applied floor(t / lambda) times. h_t is the limit lambda -> 0; halve
/// lambda until successive outputs agree to check convergence.
VertexFunction heat_semigroup(const HypergraphSystem& system, const VertexFunction& f, double t, double lambda,
                              const ProxOptions& options = {});

struct HeatSample {
    double t = 0.0;
    VertexFunction f;
};

/// Samples of the heat trajectory at the (sorted) `times`, sharing one resolvent chain.
std::vector<HeatSample> heat_trajectory(const HypergraphSystem& system, const VertexFunction& f,
                                        std::vector<double> times, double lambda, const ProxOptions& options = {});

/// Value at 0 of the interpolating polynomial through (xs[i], ys[i]).
double neville_at_zero(const std::vector<double>& xs, std::vector<double> ys);

struct LimitEstimate {
    /// Extrapolated lim lambda^{-1}(J_lambda f - f), which should be -𝓛⁰ f.
    VertexFunction estimate;
    /// Weighted distance to -canonical_laplacian(f).
    double deviation = 0.0;
    /// Weighted distance between the two finest extrapolants.
    double spread = 0.0;
    bool converged = false;
};

/// Polynomial (Neville) extrapolation to lambda = 0 of lambda^{-1}(J_lambda f - f)
/// over a decreasing lambda list, checked against the min-norm path.
LimitEstimate canonical_via_limit(const HypergraphSystem& system, const VertexFunction& f,
                                  const std::vector<double>& lambdas);

}  // namespace hyper_ricci

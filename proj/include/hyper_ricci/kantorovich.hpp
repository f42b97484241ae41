#pragma once

#include "hyper_ricci/system.hpp"
#include "hyper_ricci/weak_order.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace hyper_ricci {

/// Feasible potentials for the Kantorovich difference, in phi = D^{-1} f:
///   0 <= phi(v) <= diam,   phi(v) - phi(w) <= d(v, w).
/// The pairwise condition over all pairs follows from the adjacent pairs.
struct LipschitzPolytope {
    static bool contains(const HypergraphSystem& system, const VertexFunction& f, double tol);
    /// max_{x != y} (phi(x) - phi(y)) / d(x, y)
    static double lipschitz_constant(const HypergraphSystem& system, const VertexFunction& f);
    /// Euclidean projection in phi-coordinates (Dykstra over the box and the adjacent-pair half-spaces).
    static VertexFunction project_phi(const HypergraphSystem& system, const VertexFunction& phi);
};

template <class S>
struct KDResult {
    S value = S(0);
    /// Maximizing potential f (weighted 1-Lipschitz, in the box).
    BasicVertexFunction<S> potential;
    /// Region of J_lambda(potential) whose LP produced the value; empty for x == y.
    std::optional<WeakOrder> region;
    bool certified = false;
    std::size_t regions_solved = 0;
};

struct KDOptions {
    std::size_t cap = 8;
    std::size_t threads = 1;
};

/// Optimum of the Kantorovich LP restricted to the closure of one region, or
/// nothing when x is not strictly above y there. Variables: block gaps, the
/// lowest block value, and face multipliers whose sums equal the Lovász
/// coefficients, so that f = D u + lambda sum_e w_e (p_e - q_e) runs over the
/// preimage (I + lambda 𝓛)(g) of the region.
template <class S>
std::optional<KDResult<S>> kd_region_lp(const HypergraphSystem& system, VertexIndex x, VertexIndex y, const S& lambda,
                                        const WeakOrder& order);

/// KD_lambda(x, y) as the maximum of the region LPs over every weak order.
template <class S>
KDResult<S> kd_exact(const HypergraphSystem& system, VertexIndex x, VertexIndex y, const S& lambda,
                     const KDOptions& options = {});

struct KDHeuristicOptions {
    std::size_t restarts = 32;
    std::uint64_t seed = 1;
    std::size_t ascent_iterations = 60;
    /// Rounds of LP local search over refinements of the optimum's tie pattern.
    std::size_t local_rounds = 8;
};

/// Lower bound on KD_lambda(x, y): projected ascent from random Lipschitz-polytope
/// vertices and the distance potential, each finished by region-LP local search.
KDResult<double> kd_heuristic(const HypergraphSystem& system, VertexIndex x, VertexIndex y, double lambda,
                              const KDHeuristicOptions& options = {});

/// <J_lambda f, delta_x - delta_y>
double kd_objective(const HypergraphSystem& system, const VertexFunction& f, VertexIndex x, VertexIndex y,
                    double lambda);

/// 2 lambda vol(V)^{1/2} max_v d_v^{-1/2} + d(x, y)
double kd_upper_bound(const HypergraphSystem& system, VertexIndex x, VertexIndex y, double lambda);

struct KDMatrixReport {
    std::vector<std::vector<double>> matrix;
    std::vector<std::string> violations;
    bool ok() const { return violations.empty(); }
};

/// All-pairs KD_lambda with symmetry, positivity, triangle and upper-envelope checks.
KDMatrixReport kd_metric_check(const HypergraphSystem& system, double lambda, double tol = 1e-8,
                               const KDOptions& options = {});

}  // namespace hyper_ricci

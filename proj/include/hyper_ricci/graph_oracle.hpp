#pragma once

#include "hyper_ricci/system.hpp"

#include <vector>

namespace hyper_ricci {

/// m_x^alpha: alpha at the center, (1 - alpha) w(x, y) / d_x on each neighbor.
struct LazyWalkMeasure {
    double alpha = 0.0;
    VertexIndex center = 0;
    std::vector<double> probabilities;
};

LazyWalkMeasure lazy_walk_measure(const HypergraphSystem& graph, VertexIndex center, double alpha);

struct TransportPlan {
    /// Row-major n x n; marginals are the two input measures.
    std::vector<double> joint;
    double cost = 0.0;
    /// Kantorovich potential: 1-Lipschitz, sum f (mu - nu) = cost.
    std::vector<double> potential;
    /// |primal - dual|; zero up to rounding.
    double duality_gap = 0.0;
};

/// All edges are undirected with two members; throws InvalidInput otherwise.
void require_graph(const HypergraphSystem& system);

/// Symmetric weighted adjacency matrix (parallel edges add), row-major.
std::vector<double> adjacency_matrix(const HypergraphSystem& graph);

/// L1-Wasserstein distance under the graph metric, by the transportation LP
/// and its Kantorovich-Rubinstein dual.
TransportPlan w1_distance(const HypergraphSystem& graph, const std::vector<double>& mu, const std::vector<double>& nu);

struct LlyEstimate {
    double kappa = 0.0;
    /// Intercept of the fit; zero when kappa^alpha is linear through alpha = 1.
    double intercept = 0.0;
    double fit_residual = 0.0;
    std::vector<double> alphas;
    std::vector<double> kappa_alpha;
};

/// kappa^alpha = 1 - W1(m_x^alpha, m_y^alpha) / d(x, y) at each alpha, then a
/// degree-1 fit in (1 - alpha) over the three largest alphas; kappa is the slope.
LlyEstimate lly_curvature(const HypergraphSystem& graph, VertexIndex x, VertexIndex y,
                          std::vector<double> alphas = {0.5, 0.6, 0.7, 0.8, 0.9});

/// Solves (I + lambda 𝓛) g = f with 𝓛 = (D - A) D^{-1}.
VertexFunction linear_resolvent(const HypergraphSystem& graph, const VertexFunction& f, double lambda);

/// e^{-t 𝓛} f through the symmetric form.
VertexFunction linear_heat(const HypergraphSystem& graph, const VertexFunction& f, double t);

struct GraphEigenpair {
    double mu = 0.0;
    /// D^{1/2} psi, an eigenvector of 𝓛.
    VertexFunction f;
};

/// Spectrum of D^{-1/2} (D - A) D^{-1/2}, ascending.
std::vector<GraphEigenpair> graph_spectrum(const HypergraphSystem& graph);

}  // namespace hyper_ricci

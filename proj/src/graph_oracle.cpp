#include "hyper_ricci/graph_oracle.hpp"

#include "hyper_ricci/simplex.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <numeric>

namespace hyper_ricci {

namespace {

Eigen::MatrixXd symmetric_laplacian(const HypergraphSystem& graph) {
    const auto n = static_cast<Eigen::Index>(graph.size());
    const auto adj = adjacency_matrix(graph);
    Eigen::MatrixXd s(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j) {
            const double a = adj[static_cast<std::size_t>(i * n + j)];
            const double dij = std::sqrt(graph.degree(static_cast<VertexIndex>(i)) *
                                         graph.degree(static_cast<VertexIndex>(j)));
            s(i, j) = (i == j ? graph.degree(static_cast<VertexIndex>(i)) : 0.0) / dij - a / dij;
        }
    return s;
}

}  // namespace

void require_graph(const HypergraphSystem& system) {
    if (!system.is_graph()) throw InvalidInput("graph oracle needs an ordinary graph (two-member undirected edges)");
}

std::vector<double> adjacency_matrix(const HypergraphSystem& graph) {
    require_graph(graph);
    const std::size_t n = graph.size();
    std::vector<double> a(n * n, 0.0);
    for (std::size_t e = 0; e < graph.edge_count(); ++e) {
        const auto m = graph.edge(e).members();
        a[m[0] * n + m[1]] += graph.weight(e);
        a[m[1] * n + m[0]] += graph.weight(e);
    }
    return a;
}

LazyWalkMeasure lazy_walk_measure(const HypergraphSystem& graph, VertexIndex center, double alpha) {
    if (!(alpha > 0.0 && alpha < 1.0)) throw InvalidInput("alpha must lie in (0, 1)");
    if (center >= graph.size()) throw InvalidInput("vertex index out of range");
    const auto a = adjacency_matrix(graph);
    const std::size_t n = graph.size();
    LazyWalkMeasure m{alpha, center, std::vector<double>(n, 0.0)};
    m.probabilities[center] = alpha;
    for (VertexIndex v = 0; v < n; ++v)
        if (v != center) m.probabilities[v] = (1.0 - alpha) * a[center * n + v] / graph.degree(center);
    return m;
}

TransportPlan w1_distance(const HypergraphSystem& graph, const std::vector<double>& mu, const std::vector<double>& nu) {
    require_graph(graph);
    const std::size_t n = graph.size();
    if (mu.size() != n || nu.size() != n) throw InvalidInput("measure size does not match the graph");
    for (std::size_t v = 0; v < n; ++v)
        if (mu[v] < 0.0 || nu[v] < 0.0) throw InvalidInput("measures must be nonnegative");
    const double mass_mu = std::accumulate(mu.begin(), mu.end(), 0.0);
    const double mass_nu = std::accumulate(nu.begin(), nu.end(), 0.0);
    if (std::abs(mass_mu - mass_nu) > 1e-12 * std::max(1.0, mass_mu))
        throw InvalidInput("measures must have equal mass");

    // Primal: minimize sum d(u, v) xi(u, v) over plans with the given marginals.
    LinearProgram<double> primal(n * n);
    for (std::size_t u = 0; u < n; ++u)
        for (std::size_t v = 0; v < n; ++v) primal.objective[u * n + v] = -static_cast<double>(graph.distance(u, v));
    for (std::size_t u = 0; u < n; ++u) {
        std::vector<double> row(n * n, 0.0);
        for (std::size_t v = 0; v < n; ++v) row[u * n + v] = 1.0;
        primal.add_row(std::move(row), RowSense::Equal, mu[u]);
    }
    for (std::size_t v = 0; v < n; ++v) {
        std::vector<double> row(n * n, 0.0);
        for (std::size_t u = 0; u < n; ++u) row[u * n + v] = 1.0;
        primal.add_row(std::move(row), RowSense::Equal, nu[v]);
    }
    const auto p = solve_lp(primal, 1e-13);
    if (p.status != LpStatus::Optimal) throw SolverError("transport LP did not reach an optimum");

    // Dual: maximize sum f (mu - nu) over f with f_u - f_v <= 1 on edges, f = f+ - f-.
    LinearProgram<double> dual(2 * n);
    for (std::size_t v = 0; v < n; ++v) {
        dual.objective[v] = mu[v] - nu[v];
        dual.objective[n + v] = nu[v] - mu[v];
    }
    for (VertexIndex u = 0; u < n; ++u)
        for (VertexIndex v : graph.neighbors(u)) {
            std::vector<double> row(2 * n, 0.0);
            row[u] = 1.0;
            row[v] = -1.0;
            row[n + u] = -1.0;
            row[n + v] = 1.0;
            dual.add_row(std::move(row), RowSense::LessEqual, 1.0);
        }
    // Pin f(0) = 0 so the dual is bounded in the shift direction.
    {
        std::vector<double> row(2 * n, 0.0);
        row[0] = 1.0;
        dual.add_row(row, RowSense::Equal, 0.0);
        std::vector<double> row2(2 * n, 0.0);
        row2[n] = 1.0;
        dual.add_row(std::move(row2), RowSense::Equal, 0.0);
    }
    const auto q = solve_lp(dual, 1e-13);
    if (q.status != LpStatus::Optimal) throw SolverError("Kantorovich dual LP did not reach an optimum");

    TransportPlan plan;
    plan.joint.assign(p.x.begin(), p.x.end());
    for (auto& v : plan.joint) v = std::max(v, 0.0);
    plan.cost = -p.value;
    plan.potential.resize(n);
    for (std::size_t v = 0; v < n; ++v) plan.potential[v] = q.x[v] - q.x[n + v];
    plan.duality_gap = std::abs(plan.cost - q.value);
    return plan;
}

LlyEstimate lly_curvature(const HypergraphSystem& graph, VertexIndex x, VertexIndex y, std::vector<double> alphas) {
    require_graph(graph);
    if (x == y) throw InvalidInput("curvature needs two distinct vertices");
    if (alphas.size() < 3) throw InvalidInput("need at least three alpha values");
    std::sort(alphas.begin(), alphas.end());
    const double d = static_cast<double>(graph.distance(x, y));
    LlyEstimate out;
    out.alphas = alphas;
    for (double alpha : alphas) {
        const auto mx = lazy_walk_measure(graph, x, alpha);
        const auto my = lazy_walk_measure(graph, y, alpha);
        out.kappa_alpha.push_back(1.0 - w1_distance(graph, mx.probabilities, my.probabilities).cost / d);
    }
    // Least squares kappa^alpha = a + b (1 - alpha) on the three largest alphas.
    const std::size_t k = alphas.size();
    Eigen::Matrix<double, 3, 2> a;
    Eigen::Vector3d b;
    for (int i = 0; i < 3; ++i) {
        const std::size_t j = k - 3 + static_cast<std::size_t>(i);
        a(i, 0) = 1.0;
        a(i, 1) = 1.0 - alphas[j];
        b(i) = out.kappa_alpha[j];
    }
    const Eigen::Vector2d c = a.colPivHouseholderQr().solve(b);
    out.intercept = c(0);
    out.kappa = c(1);
    out.fit_residual = (a * c - b).cwiseAbs().maxCoeff();
    return out;
}

VertexFunction linear_resolvent(const HypergraphSystem& graph, const VertexFunction& f, double lambda) {
    if (!(lambda > 0.0)) throw InvalidInput("lambda must be positive");
    const std::size_t n = graph.size();
    if (f.size() != n) throw InvalidInput("function size does not match the graph");
    const auto adj = adjacency_matrix(graph);
    const auto m = static_cast<Eigen::Index>(n);
    Eigen::MatrixXd op = Eigen::MatrixXd::Identity(m, m);
    for (Eigen::Index i = 0; i < m; ++i)
        for (Eigen::Index j = 0; j < m; ++j) {
            const double lij = (i == j ? graph.degree(static_cast<VertexIndex>(i)) : 0.0) -
                               adj[static_cast<std::size_t>(i * m + j)];
            op(i, j) += lambda * lij / graph.degree(static_cast<VertexIndex>(j));
        }
    Eigen::VectorXd rhs(m);
    for (Eigen::Index i = 0; i < m; ++i) rhs(i) = f[static_cast<std::size_t>(i)];
    const Eigen::VectorXd g = op.partialPivLu().solve(rhs);
    return VertexFunction(std::vector<double>(g.data(), g.data() + m));
}

VertexFunction linear_heat(const HypergraphSystem& graph, const VertexFunction& f, double t) {
    if (!(t >= 0.0)) throw InvalidInput("t must be nonnegative");
    const std::size_t n = graph.size();
    if (f.size() != n) throw InvalidInput("function size does not match the graph");
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(symmetric_laplacian(graph));
    const auto m = static_cast<Eigen::Index>(n);
    Eigen::VectorXd psi(m);
    for (Eigen::Index i = 0; i < m; ++i)
        psi(i) = f[static_cast<std::size_t>(i)] / std::sqrt(graph.degree(static_cast<VertexIndex>(i)));
    const Eigen::VectorXd decay = (-t * eig.eigenvalues().array()).exp();
    const Eigen::VectorXd out = eig.eigenvectors() * decay.asDiagonal() * eig.eigenvectors().transpose() * psi;
    VertexFunction g(n);
    for (Eigen::Index i = 0; i < m; ++i)
        g[static_cast<std::size_t>(i)] = out(i) * std::sqrt(graph.degree(static_cast<VertexIndex>(i)));
    return g;
}

std::vector<GraphEigenpair> graph_spectrum(const HypergraphSystem& graph) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(symmetric_laplacian(graph));
    const std::size_t n = graph.size();
    std::vector<GraphEigenpair> out;
    for (Eigen::Index k = 0; k < static_cast<Eigen::Index>(n); ++k) {
        GraphEigenpair pair;
        pair.mu = eig.eigenvalues()(k);
        pair.f = VertexFunction(n);
        for (std::size_t i = 0; i < n; ++i)
            pair.f[i] = std::sqrt(graph.degree(i)) * eig.eigenvectors()(static_cast<Eigen::Index>(i), k);
        out.push_back(std::move(pair));
    }
    return out;
}

}  // namespace hyper_ricci

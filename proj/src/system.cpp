#include "hyper_ricci/system.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>

namespace hyper_ricci {

namespace {

std::vector<VertexIndex> sorted_unique(std::vector<VertexIndex> v) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
    return v;
}

constexpr std::size_t kUnreachable = std::numeric_limits<std::size_t>::max();

}  // namespace

Edge::Edge(bool directed, std::vector<VertexIndex> tails, std::vector<VertexIndex> heads)
    : directed_(directed), tails_(sorted_unique(std::move(tails))), heads_(sorted_unique(std::move(heads))) {
    if (tails_.empty() || heads_.empty())
        throw InvalidInput(directed_ ? "hyperarc needs nonempty tails and heads" : "hyperedge needs members");
    std::vector<VertexIndex> all = tails_;
    all.insert(all.end(), heads_.begin(), heads_.end());
    support_ = sorted_unique(std::move(all));
}

Edge Edge::undirected(std::vector<VertexIndex> members) {
    auto copy = members;
    return Edge(false, std::move(members), std::move(copy));
}

Edge Edge::directed(std::vector<VertexIndex> tails, std::vector<VertexIndex> heads) {
    return Edge(true, std::move(tails), std::move(heads));
}

bool Edge::contains(VertexIndex v) const { return std::binary_search(support_.begin(), support_.end(), v); }

HypergraphSystem::HypergraphSystem(std::vector<std::string> vertex_ids, std::vector<Edge> edges,
                                   std::vector<double> weights, std::optional<std::vector<Rational>> exact_weights)
    : ids_(std::move(vertex_ids)), edges_(std::move(edges)), weights_(std::move(weights)) {
    const std::size_t n = ids_.size();
    if (n == 0) throw InvalidInput("system has no vertices");
    for (VertexIndex i = 0; i < n; ++i) {
        if (ids_[i].empty()) throw InvalidInput("empty vertex id");
        if (!index_.emplace(ids_[i], i).second) throw InvalidInput("duplicate vertex id '" + ids_[i] + "'");
    }
    if (weights_.size() != edges_.size()) throw InvalidInput("one weight per edge required");
    if (exact_weights) {
        if (exact_weights->size() != edges_.size()) throw InvalidInput("one exact weight per edge required");
        exact_weights_ = std::move(*exact_weights);
    } else {
        exact_weights_.reserve(weights_.size());
        for (double w : weights_) {
            if (!std::isfinite(w)) throw InvalidInput("edge weight must be finite");
            exact_weights_.emplace_back(w);
        }
    }
    for (std::size_t e = 0; e < edges_.size(); ++e) {
        if (!(weights_[e] > 0.0) || exact_weights_[e] <= 0)
            throw InvalidInput("edge " + std::to_string(e) + " has non-positive weight");
        for (VertexIndex v : edges_[e].support())
            if (v >= n) throw InvalidInput("edge " + std::to_string(e) + " references an unknown vertex");
    }

    degrees_.assign(n, 0.0);
    exact_degrees_.assign(n, Rational(0));
    neighbors_.assign(n, {});
    for (std::size_t e = 0; e < edges_.size(); ++e) {
        const auto support = edges_[e].support();
        for (VertexIndex v : support) {
            degrees_[v] += weights_[e];
            exact_degrees_[v] += exact_weights_[e];
            for (VertexIndex u : support)
                if (u != v) neighbors_[v].push_back(u);
        }
    }
    for (auto& nb : neighbors_) nb = sorted_unique(std::move(nb));
    volume_ = 0.0;
    for (double d : degrees_) volume_ += d;

    distances_.assign(n * n, kUnreachable);
    for (VertexIndex s = 0; s < n; ++s) {
        std::queue<VertexIndex> queue;
        distances_[s * n + s] = 0;
        queue.push(s);
        while (!queue.empty()) {
            VertexIndex v = queue.front();
            queue.pop();
            for (VertexIndex u : neighbors_[v]) {
                if (distances_[s * n + u] == kUnreachable) {
                    distances_[s * n + u] = distances_[s * n + v] + 1;
                    queue.push(u);
                }
            }
        }
    }
    for (VertexIndex v = 0; v < n; ++v) {
        if (distances_[v] == kUnreachable) throw InvalidInput("system is disconnected: '" + ids_[v] + "' unreachable");
    }
    diameter_ = *std::max_element(distances_.begin(), distances_.end());
}

void HypergraphSystem::check_vertex(VertexIndex v) const {
    if (v >= ids_.size()) throw InvalidInput("vertex index " + std::to_string(v) + " out of range");
}

VertexIndex HypergraphSystem::index_of(std::string_view id) const {
    auto it = index_.find(std::string(id));
    if (it == index_.end()) throw InvalidInput("unknown vertex '" + std::string(id) + "'");
    return it->second;
}

double HypergraphSystem::degree(VertexIndex v) const {
    check_vertex(v);
    return degrees_[v];
}

bool HypergraphSystem::adjacent(VertexIndex x, VertexIndex y) const {
    check_vertex(x);
    check_vertex(y);
    return x != y && std::binary_search(neighbors_[x].begin(), neighbors_[x].end(), y);
}

std::size_t HypergraphSystem::distance(VertexIndex x, VertexIndex y) const {
    check_vertex(x);
    check_vertex(y);
    return distances_[x * ids_.size() + y];
}

double HypergraphSystem::max_inv_sqrt_degree() const {
    double m = 0.0;
    for (double d : degrees_) m = std::max(m, 1.0 / std::sqrt(d));
    return m;
}

VertexFunction HypergraphSystem::stationary() const {
    VertexFunction pi(size());
    for (VertexIndex v = 0; v < size(); ++v) pi[v] = degrees_[v] / volume_;
    return pi;
}

bool HypergraphSystem::is_graph() const {
    return std::all_of(edges_.begin(), edges_.end(),
                       [](const Edge& e) { return !e.is_directed() && e.members().size() == 2; });
}

bool HypergraphSystem::has_directed_edges() const {
    return std::any_of(edges_.begin(), edges_.end(), [](const Edge& e) { return e.is_directed(); });
}

}  // namespace hyper_ricci

#pragma once

#include "hyper_ricci/errors.hpp"
#include "hyper_ricci/scalar.hpp"
#include "hyper_ricci/vertex_function.hpp"

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

namespace hyper_ricci {

using VertexIndex = std::size_t;

/// An undirected hyperedge, or a directed hyperarc (tails -> heads).
///
/// An undirected hyperedge is stored with tails == heads == members; the cut
/// functions coincide in that case, so the polytope code treats both kinds
/// through the (tails, heads) pair.
class Edge {
public:
    static Edge undirected(std::vector<VertexIndex> members);
    static Edge directed(std::vector<VertexIndex> tails, std::vector<VertexIndex> heads);

    bool is_directed() const { return directed_; }
    std::span<const VertexIndex> members() const { return tails_; }
    std::span<const VertexIndex> tails() const { return tails_; }
    std::span<const VertexIndex> heads() const { return heads_; }
    /// Sorted union of tails and heads.
    std::span<const VertexIndex> support() const { return support_; }
    bool contains(VertexIndex v) const;

    friend bool operator==(const Edge&, const Edge&) = default;

private:
    Edge(bool directed, std::vector<VertexIndex> tails, std::vector<VertexIndex> heads);

    bool directed_ = false;
    std::vector<VertexIndex> tails_;
    std::vector<VertexIndex> heads_;
    std::vector<VertexIndex> support_;
};

/// A finite, connected, weighted hypergraph or directed-hyperarc system.
/// Immutable after construction.
class HypergraphSystem {
public:
    /// Throws InvalidInput on empty/duplicate vertex ids, out-of-range edge
    /// members, empty edge sides, non-positive weights or a disconnected system.
    /// `exact_weights`, when given, must agree with `weights` and is used by the
    /// rational code paths; otherwise the doubles are converted exactly.
    HypergraphSystem(std::vector<std::string> vertex_ids, std::vector<Edge> edges, std::vector<double> weights,
                     std::optional<std::vector<Rational>> exact_weights = std::nullopt);

    std::size_t size() const { return ids_.size(); }
    std::size_t edge_count() const { return edges_.size(); }

    const std::string& vertex_id(VertexIndex v) const { return ids_.at(v); }
    const std::vector<std::string>& vertex_ids() const { return ids_; }
    VertexIndex index_of(std::string_view id) const;

    const std::vector<Edge>& edges() const { return edges_; }
    const Edge& edge(std::size_t e) const { return edges_.at(e); }
    double weight(std::size_t e) const { return weights_.at(e); }

    double degree(VertexIndex v) const;
    double degree(std::string_view id) const { return degree(index_of(id)); }
    double volume() const { return volume_; }

    template <class S>
    std::span<const S> degrees_as() const;
    template <class S>
    std::span<const S> weights_as() const;

    std::span<const double> degrees() const { return degrees_; }
    std::span<const Rational> exact_degrees() const { return exact_degrees_; }
    std::span<const double> weights() const { return weights_; }
    std::span<const Rational> exact_weights() const { return exact_weights_; }

    /// x ~ y: some edge support contains both (x != y).
    bool adjacent(VertexIndex x, VertexIndex y) const;
    std::span<const VertexIndex> neighbors(VertexIndex v) const { return neighbors_.at(v); }

    /// Shortest-path distance under the adjacency relation.
    std::size_t distance(VertexIndex x, VertexIndex y) const;
    std::size_t distance(std::string_view x, std::string_view y) const { return distance(index_of(x), index_of(y)); }
    std::size_t diameter() const { return diameter_; }

    /// max_x d_x^{-1/2}
    double max_inv_sqrt_degree() const;

    /// pi(x) = d_x / vol(V)
    VertexFunction stationary() const;

    /// Every edge is an undirected hyperedge with exactly two members.
    bool is_graph() const;
    bool has_directed_edges() const;

    double inner(const VertexFunction& f, const VertexFunction& g) const {
        return weighted_inner<double>(degrees_, f, g);
    }
    double norm(const VertexFunction& f) const { return std::sqrt(inner(f, f)); }

    friend bool operator==(const HypergraphSystem& a, const HypergraphSystem& b) {
        return a.ids_ == b.ids_ && a.edges_ == b.edges_ && a.exact_weights_ == b.exact_weights_;
    }

private:
    void check_vertex(VertexIndex v) const;

    std::vector<std::string> ids_;
    std::unordered_map<std::string, VertexIndex> index_;
    std::vector<Edge> edges_;
    std::vector<double> weights_;
    std::vector<Rational> exact_weights_;
    std::vector<double> degrees_;
    std::vector<Rational> exact_degrees_;
    double volume_ = 0.0;
    std::vector<std::vector<VertexIndex>> neighbors_;
    std::vector<std::size_t> distances_;  // row-major n x n
    std::size_t diameter_ = 0;
};

template <>
inline std::span<const double> HypergraphSystem::degrees_as<double>() const {
    return degrees_;
}
template <>
inline std::span<const Rational> HypergraphSystem::degrees_as<Rational>() const {
    return exact_degrees_;
}
template <>
inline std::span<const double> HypergraphSystem::weights_as<double>() const {
    return weights_;
}
template <>
inline std::span<const Rational> HypergraphSystem::weights_as<Rational>() const {
    return exact_weights_;
}

}  // namespace hyper_ricci

#pragma once

#include "hyper_ricci/dense.hpp"
#include "hyper_ricci/min_norm.hpp"
#include "hyper_ricci/system.hpp"
#include "hyper_ricci/weak_order.hpp"

#include <vector>

namespace hyper_ricci {

/// An edge whose Lovász value is a positive block gap throughout a region:
/// its top tails sit in block `top_rank`, its bottom heads in `bottom_rank`,
/// and top_rank < bottom_rank.
struct RegionEdge {
    std::size_t edge = 0;
    std::size_t top_rank = 0;
    std::size_t bottom_rank = 0;
    std::vector<VertexIndex> top;
    std::vector<VertexIndex> bottom;
};

/// Edges active on the region of `order`; the rest contribute nothing there.
std::vector<RegionEdge> region_edges(const HypergraphSystem& system, const WeakOrder& order);

/// Block-contracted operator of (D + lambda L) on the region:
///   C = diag(sum_{x in I} d_x) + lambda sum_e w_e (e_top - e_bottom)(e_top - e_bottom)^T.
/// For g in the region with block values u = D^{-1} g, summing (I + lambda 𝓛) g
/// over each block gives C u, because every face mixture has unit mass per side.
template <class S>
DenseMatrix<S> contracted_matrix(const HypergraphSystem& system, const WeakOrder& order,
                                 const std::vector<RegionEdge>& edges, const S& lambda) {
    const std::size_t l = order.block_count();
    const auto degrees = system.degrees_as<S>();
    const auto weights = system.weights_as<S>();
    DenseMatrix<S> c(l, l);
    for (VertexIndex v = 0; v < system.size(); ++v) c(order.rank(v), order.rank(v)) += degrees[v];
    for (const RegionEdge& re : edges) {
        const S lw = lambda * weights[re.edge];
        c(re.top_rank, re.top_rank) += lw;
        c(re.bottom_rank, re.bottom_rank) += lw;
        c(re.top_rank, re.bottom_rank) -= lw;
        c(re.bottom_rank, re.top_rank) -= lw;
    }
    return c;
}

template <class S>
std::vector<S> block_sums(const WeakOrder& order, const BasicVertexFunction<S>& f) {
    std::vector<S> out(order.block_count(), S(0));
    for (VertexIndex v = 0; v < f.size(); ++v) out[order.rank(v)] += f[v];
    return out;
}

/// Face terms w_e c_e (Conv top - Conv bottom) of the region for block values u.
template <class S>
std::vector<FaceTerm<S>> region_terms(const HypergraphSystem& system, const std::vector<RegionEdge>& edges,
                                      const std::vector<S>& block_values) {
    const auto weights = system.weights_as<S>();
    std::vector<FaceTerm<S>> terms;
    terms.reserve(edges.size());
    for (const RegionEdge& re : edges) {
        S c = block_values[re.top_rank] - block_values[re.bottom_rank];
        if (c < S(0)) c = S(0);
        terms.push_back({weights[re.edge] * c, re.top, re.bottom});
    }
    return terms;
}

}  // namespace hyper_ricci

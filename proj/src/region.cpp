#include "hyper_ricci/region.hpp"

namespace hyper_ricci {

std::vector<RegionEdge> region_edges(const HypergraphSystem& system, const WeakOrder& order) {
    std::vector<RegionEdge> out;
    for (std::size_t e = 0; e < system.edge_count(); ++e) {
        const Edge& edge = system.edge(e);
        std::size_t top_rank = order.block_count();
        for (VertexIndex x : edge.tails()) top_rank = std::min(top_rank, order.rank(x));
        std::size_t bottom_rank = 0;
        for (VertexIndex y : edge.heads()) bottom_rank = std::max(bottom_rank, order.rank(y));
        if (top_rank >= bottom_rank) continue;
        RegionEdge re;
        re.edge = e;
        re.top_rank = top_rank;
        re.bottom_rank = bottom_rank;
        for (VertexIndex x : edge.tails())
            if (order.rank(x) == top_rank) re.top.push_back(x);
        for (VertexIndex y : edge.heads())
            if (order.rank(y) == bottom_rank) re.bottom.push_back(y);
        out.push_back(std::move(re));
    }
    return out;
}

}  // namespace hyper_ricci

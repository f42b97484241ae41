#include "hyper_ricci/polytope.hpp"

namespace hyper_ricci {

BasePolytope::BasePolytope(const Edge& edge) : edge_(&edge) {
    if (edge.is_directed()) {
        for (VertexIndex x : edge.tails())
            for (VertexIndex y : edge.heads()) generators_.push_back({x, y});
        generators_.push_back({});
    } else {
        // x == y is kept: it is the zero vector and does not change the hull.
        for (VertexIndex x : edge.members())
            for (VertexIndex y : edge.members()) generators_.push_back({x, y});
    }
}

Edge mirrored(const Edge& edge) {
    if (!edge.is_directed()) return edge;
    return Edge::directed({edge.heads().begin(), edge.heads().end()}, {edge.tails().begin(), edge.tails().end()});
}

}  // namespace hyper_ricci

#pragma once

#include "hyper_ricci/system.hpp"

#include <algorithm>
#include <limits>
#include <vector>

namespace hyper_ricci {

/// delta_plus - delta_minus. plus == minus encodes the zero vector; the
/// explicit zero generator of a hyperarc uses kZeroVertex on both sides.
struct Generator {
    static constexpr VertexIndex kZeroVertex = std::numeric_limits<VertexIndex>::max();

    VertexIndex plus = kZeroVertex;
    VertexIndex minus = kZeroVertex;

    bool is_zero() const { return plus == minus; }

    template <class S>
    S apply(const BasicVertexFunction<S>& v) const {
        if (is_zero()) return S(0);
        return v[plus] - v[minus];
    }

    friend bool operator==(const Generator&, const Generator&) = default;
};

/// Base polytope of one edge cut function, kept as its generator list.
///   hyperedge e:      Conv{delta_x - delta_y : x, y in e}
///   hyperarc (t, h):  Conv({delta_x - delta_y : x in t, y in h} u {0})
class BasePolytope {
public:
    /// Keeps a reference to `edge`, which must outlive the polytope.
    explicit BasePolytope(const Edge& edge);
    explicit BasePolytope(Edge&&) = delete;

    const Edge& edge() const { return *edge_; }
    const std::vector<Generator>& generators() const { return generators_; }

private:
    const Edge* edge_;
    std::vector<Generator> generators_;
};

/// Generators of a base polytope that maximize b^T v, plus the product form
/// used by the solvers: Conv(face) = Conv{delta_x : x in top} - Conv{delta_y : y in bottom}.
template <class S>
struct ArgmaxFace {
    std::vector<Generator> generators;
    std::vector<VertexIndex> top;
    std::vector<VertexIndex> bottom;
    S value = S(0);
};

/// Lovász extension of the edge cut function: max_{b in B_e} b^T v.
template <class S>
S lovasz_value(const Edge& edge, const BasicVertexFunction<S>& v) {
    S hi = v[edge.tails().front()];
    for (VertexIndex x : edge.tails()) hi = std::max(hi, v[x]);
    S lo = v[edge.heads().front()];
    for (VertexIndex y : edge.heads()) lo = std::min(lo, v[y]);
    S diff = hi - lo;
    return diff > S(0) ? diff : S(0);
}

template <class S>
S lovasz_value(const BasePolytope& polytope, const BasicVertexFunction<S>& v) {
    return lovasz_value(polytope.edge(), v);
}

/// All generators with b^T v >= max - tol. `top`/`bottom` hold the vertices
/// within tol of the tail maximum / head minimum; with tol = 0 the generator
/// list is exactly top x bottom (plus the zero generator when value is 0).
template <class S>
ArgmaxFace<S> argmax_face(const BasePolytope& polytope, const BasicVertexFunction<S>& v, const S& tol) {
    const Edge& edge = polytope.edge();
    ArgmaxFace<S> face;
    face.value = lovasz_value(edge, v);
    for (const Generator& g : polytope.generators())
        if (g.apply(v) >= face.value - tol) face.generators.push_back(g);

    S hi = v[edge.tails().front()];
    for (VertexIndex x : edge.tails()) hi = std::max(hi, v[x]);
    S lo = v[edge.heads().front()];
    for (VertexIndex y : edge.heads()) lo = std::min(lo, v[y]);
    for (VertexIndex x : edge.tails())
        if (v[x] >= hi - tol) face.top.push_back(x);
    for (VertexIndex y : edge.heads())
        if (v[y] <= lo + tol) face.bottom.push_back(y);
    return face;
}

/// Edge whose base polytope is -B_e: the same hyperedge, or the reversed hyperarc.
Edge mirrored(const Edge& edge);

}  // namespace hyper_ricci

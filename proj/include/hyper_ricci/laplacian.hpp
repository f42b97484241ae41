#pragma once

#include "hyper_ricci/min_norm.hpp"
#include "hyper_ricci/polytope.hpp"
#include "hyper_ricci/system.hpp"

#include <vector>

namespace hyper_ricci {

/// One element of L f (or the normalized 𝓛 f) with the faces it was built from.
template <class S>
struct LaplacianImage {
    BasicVertexFunction<S> representative;
    /// Per edge: argmax face of B_e at the probe and the Lovász coefficient c_e.
    std::vector<ArgmaxFace<S>> faces;
    std::vector<S> coefficients;
    /// Per edge: convex weights over face.top / face.bottom realizing the representative.
    std::vector<FaceMixture<S>> mixtures;
    bool is_canonical = false;
};

/// Default face tolerance: 1e-9 for double, exact comparison for Rational.
template <class S>
S default_face_tol() {
    if constexpr (ScalarTraits<S>::exact) {
        return S(0);
    } else {
        return S(1e-9);
    }
}

/// Q(g) = 1/2 sum_e w_e lovasz_e(g)^2. Callers pass D^{-1} g where the
/// normalized energy is wanted.
template <class S>
S energy_q(const HypergraphSystem& system, const BasicVertexFunction<S>& g);

/// Minimal-norm element of L f (normalized = false) or of 𝓛 f = L D^{-1} f.
/// The probe for the faces is f, respectively D^{-1} f.
template <class S>
LaplacianImage<S> canonical_laplacian(const HypergraphSystem& system, const BasicVertexFunction<S>& f, bool normalized,
                                      const S& face_tol = default_face_tol<S>());

/// Distance (weighted norm) from `candidate` to the image set L f / 𝓛 f.
template <class S>
S laplacian_member_distance(const HypergraphSystem& system, const BasicVertexFunction<S>& f,
                            const BasicVertexFunction<S>& candidate, bool normalized,
                            const S& face_tol = default_face_tol<S>());

/// candidate lies within `tol` of the image set. With exact scalars and
/// tol = 0 this is exact membership.
template <class S>
bool laplacian_member_check(const HypergraphSystem& system, const BasicVertexFunction<S>& f,
                            const BasicVertexFunction<S>& candidate, const S& tol, bool normalized,
                            const S& face_tol = default_face_tol<S>());

/// Face terms sum_e w_e c_e (Conv top - Conv bottom) for the probe v; edges
/// with c_e = 0 are dropped. `edge_of_term` maps terms back to edges.
template <class S>
std::vector<FaceTerm<S>> laplacian_terms(const HypergraphSystem& system, const BasicVertexFunction<S>& probe,
                                         const S& face_tol, std::vector<std::size_t>* edge_of_term = nullptr,
                                         std::vector<ArgmaxFace<S>>* faces = nullptr,
                                         std::vector<S>* coefficients = nullptr);

}  // namespace hyper_ricci

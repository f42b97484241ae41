#include "hyper_ricci/laplacian.hpp"

#include <cmath>

namespace hyper_ricci {

template <class S>
S energy_q(const HypergraphSystem& system, const BasicVertexFunction<S>& g) {
    if (g.size() != system.size()) throw InvalidInput("function size does not match the system");
    const auto weights = system.weights_as<S>();
    S total(0);
    for (std::size_t e = 0; e < system.edge_count(); ++e) {
        S c = lovasz_value(system.edge(e), g);
        total += weights[e] * c * c;
    }
    return total / S(2);
}

template <class S>
std::vector<FaceTerm<S>> laplacian_terms(const HypergraphSystem& system, const BasicVertexFunction<S>& probe,
                                         const S& face_tol, std::vector<std::size_t>* edge_of_term,
                                         std::vector<ArgmaxFace<S>>* faces, std::vector<S>* coefficients) {
    const auto weights = system.weights_as<S>();
    std::vector<FaceTerm<S>> terms;
    for (std::size_t e = 0; e < system.edge_count(); ++e) {
        BasePolytope polytope(system.edge(e));
        ArgmaxFace<S> face = argmax_face(polytope, probe, face_tol);
        const S c = face.value;
        if (c > S(0)) {
            terms.push_back({weights[e] * c, face.top, face.bottom});
            if (edge_of_term) edge_of_term->push_back(e);
        }
        if (coefficients) coefficients->push_back(c);
        if (faces) faces->push_back(std::move(face));
    }
    return terms;
}

template <class S>
LaplacianImage<S> canonical_laplacian(const HypergraphSystem& system, const BasicVertexFunction<S>& f, bool normalized,
                                      const S& face_tol) {
    if (f.size() != system.size()) throw InvalidInput("function size does not match the system");
    const auto degrees = system.degrees_as<S>();
    const BasicVertexFunction<S> probe = normalized ? divide_by_degree(degrees, f) : f;

    LaplacianImage<S> image;
    std::vector<std::size_t> edge_of_term;
    auto terms = laplacian_terms(system, probe, face_tol, &edge_of_term, &image.faces, &image.coefficients);
    auto mnp = min_norm_point<S>(terms, degrees, BasicVertexFunction<S>(system.size()));

    image.representative = std::move(mnp.point);
    image.mixtures.resize(system.edge_count());
    for (std::size_t e = 0; e < system.edge_count(); ++e) {
        image.mixtures[e].top_weights.assign(image.faces[e].top.size(), S(0));
        image.mixtures[e].bottom_weights.assign(image.faces[e].bottom.size(), S(0));
    }
    for (std::size_t t = 0; t < terms.size(); ++t) image.mixtures[edge_of_term[t]] = std::move(mnp.mixtures[t]);
    image.is_canonical = true;
    return image;
}

template <class S>
S laplacian_member_distance(const HypergraphSystem& system, const BasicVertexFunction<S>& f,
                            const BasicVertexFunction<S>& candidate, bool normalized, const S& face_tol) {
    if (f.size() != system.size() || candidate.size() != system.size())
        throw InvalidInput("function size does not match the system");
    const auto degrees = system.degrees_as<S>();
    const BasicVertexFunction<S> probe = normalized ? divide_by_degree(degrees, f) : f;
    auto terms = laplacian_terms(system, probe, face_tol);
    auto mnp = min_norm_point<S>(terms, degrees, candidate);
    if constexpr (ScalarTraits<S>::exact) {
        // The exact distance is irrational in general; callers compare squared values.
        return mnp.norm_sq;
    } else {
        return std::sqrt(std::max(mnp.norm_sq, 0.0));
    }
}

template <class S>
bool laplacian_member_check(const HypergraphSystem& system, const BasicVertexFunction<S>& f,
                            const BasicVertexFunction<S>& candidate, const S& tol, bool normalized, const S& face_tol) {
    S dist = laplacian_member_distance(system, f, candidate, normalized, face_tol);
    if constexpr (ScalarTraits<S>::exact) {
        return dist <= tol * tol;
    } else {
        return dist <= tol;
    }
}

#define HYPER_RICCI_INSTANTIATE(S)                                                                                  \
    template S energy_q<S>(const HypergraphSystem&, const BasicVertexFunction<S>&);                                 \
    template std::vector<FaceTerm<S>> laplacian_terms<S>(const HypergraphSystem&, const BasicVertexFunction<S>&,   \
                                                         const S&, std::vector<std::size_t>*,                       \
                                                         std::vector<ArgmaxFace<S>>*, std::vector<S>*);             \
    template LaplacianImage<S> canonical_laplacian<S>(const HypergraphSystem&, const BasicVertexFunction<S>&, bool, \
                                                      const S&);                                                    \
    template S laplacian_member_distance<S>(const HypergraphSystem&, const BasicVertexFunction<S>&,                 \
                                            const BasicVertexFunction<S>&, bool, const S&);                         \
    template bool laplacian_member_check<S>(const HypergraphSystem&, const BasicVertexFunction<S>&,                 \
                                            const BasicVertexFunction<S>&, const S&, bool, const S&);

HYPER_RICCI_INSTANTIATE(double)
HYPER_RICCI_INSTANTIATE(Rational)

#undef HYPER_RICCI_INSTANTIATE

}  // namespace hyper_ricci

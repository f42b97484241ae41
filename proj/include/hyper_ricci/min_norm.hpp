#pragma once

#include "hyper_ricci/dense.hpp"
#include "hyper_ricci/errors.hpp"
#include "hyper_ricci/system.hpp"

#include <algorithm>
#include <cstddef>
#include <span>
#include <vector>

namespace hyper_ricci {

/// scale * (Conv{delta_x : x in top} - Conv{delta_y : y in bottom}); one per
/// active edge, with scale = w_e * c_e >= 0.
template <class S>
struct FaceTerm {
    S scale = S(0);
    std::vector<VertexIndex> top;
    std::vector<VertexIndex> bottom;
};

/// Convex weights over a term's top and bottom vertices.
template <class S>
struct FaceMixture {
    std::vector<S> top_weights;
    std::vector<S> bottom_weights;
};

template <class S>
struct MinNormResult {
    BasicVertexFunction<S> point;
    std::vector<FaceMixture<S>> mixtures;
    S norm_sq = S(0);
    S gap = S(0);
    std::size_t iterations = 0;
};

struct MinNormOptions {
    /// Stop when <x,x> - min_q <x,q> <= tol * max(|atom|^2, |data|^2), where |data|
    /// bounds the terms and the offset (ignored for exact scalars).
    double tol = 1e-12;
    std::size_t max_iterations = 20000;
};

namespace detail {

template <class S>
struct Atom {
    std::vector<std::size_t> choice;  // per term: (top index, bottom index) interleaved
    BasicVertexFunction<S> point;
    S norm_sq = S(0);
};

template <class S>
Atom<S> make_atom(std::span<const FaceTerm<S>> terms, std::span<const S> degrees, const BasicVertexFunction<S>& offset,
                  std::vector<std::size_t> choice) {
    Atom<S> atom;
    atom.point = BasicVertexFunction<S>(offset.size());
    for (std::size_t i = 0; i < offset.size(); ++i) atom.point[i] = -offset[i];
    for (std::size_t t = 0; t < terms.size(); ++t) {
        atom.point[terms[t].top[choice[2 * t]]] += terms[t].scale;
        atom.point[terms[t].bottom[choice[2 * t + 1]]] -= terms[t].scale;
    }
    atom.choice = std::move(choice);
    atom.norm_sq = weighted_norm_sq<S>(degrees, atom.point);
    return atom;
}

/// Linear minimization of <x, q> over the Minkowski sum; separable per term.
template <class S>
Atom<S> linear_oracle(std::span<const FaceTerm<S>> terms, std::span<const S> degrees,
                      const BasicVertexFunction<S>& offset, const BasicVertexFunction<S>& x) {
    std::vector<std::size_t> choice(2 * terms.size(), 0);
    for (std::size_t t = 0; t < terms.size(); ++t) {
        const auto& term = terms[t];
        std::size_t best_top = 0;
        S best = x[term.top[0]] / degrees[term.top[0]];
        for (std::size_t i = 1; i < term.top.size(); ++i) {
            S h = x[term.top[i]] / degrees[term.top[i]];
            if (h < best) {
                best = h;
                best_top = i;
            }
        }
        std::size_t best_bottom = 0;
        best = x[term.bottom[0]] / degrees[term.bottom[0]];
        for (std::size_t i = 1; i < term.bottom.size(); ++i) {
            S h = x[term.bottom[i]] / degrees[term.bottom[i]];
            if (h > best) {
                best = h;
                best_bottom = i;
            }
        }
        choice[2 * t] = best_top;
        choice[2 * t + 1] = best_bottom;
    }
    return make_atom(terms, degrees, offset, std::move(choice));
}

/// Minimizer of |sum a_i p_i| subject to sum a_i = 1 (the affine hull minimizer).
template <class S>
std::optional<std::vector<S>> affine_minimizer(const std::vector<Atom<S>>& atoms, std::span<const S> degrees) {
    const std::size_t k = atoms.size();
    DenseMatrix<S> a(k + 1, k + 1);
    std::vector<S> rhs(k + 1, S(0));
    S scale(0);
    for (std::size_t i = 0; i < k; ++i) scale = std::max(scale, atoms[i].norm_sq);
    if (scale == S(0)) scale = S(1);
    for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t j = i; j < k; ++j) {
            S gij = weighted_inner<S>(degrees, atoms[i].point, atoms[j].point) / scale;
            a(i, j) = gij;
            a(j, i) = gij;
        }
        a(i, k) = S(1);
        a(k, i) = S(1);
    }
    rhs[k] = S(1);
    S singular_tol(0);
    if constexpr (!ScalarTraits<S>::exact) singular_tol = S(1e-14);
    auto sol = solve_linear(std::move(a), std::move(rhs), singular_tol);
    if (!sol) return std::nullopt;
    sol->pop_back();
    return sol;
}

template <class S>
BasicVertexFunction<S> combine(const std::vector<Atom<S>>& atoms, const std::vector<S>& coeffs) {
    BasicVertexFunction<S> x(atoms.front().point.size());
    for (std::size_t i = 0; i < atoms.size(); ++i)
        for (std::size_t v = 0; v < x.size(); ++v) x[v] += coeffs[i] * atoms[i].point[v];
    return x;
}

}  // namespace detail

/// Minimum-norm point (in the D^{-1}-weighted norm) of
///     sum_t terms[t].scale * (Conv top_t - Conv bottom_t)  -  offset,
/// by Wolfe's corral algorithm over the Minkowski sum. The linear oracle of a
/// Minkowski sum splits per term, so sums of per-term vertices never need to
/// be enumerated. Exact scalars terminate with the exact minimizer.
/// In floating point the loop also stops when rounding stalls it; `gap`
/// then reports how far from optimal the returned point is.
/// Throws SolverError when the iteration cap is hit.
template <class S>
MinNormResult<S> min_norm_point(std::span<const FaceTerm<S>> terms, std::span<const S> degrees,
                                const BasicVertexFunction<S>& offset, const MinNormOptions& options = {}) {
    using detail::Atom;
    MinNormResult<S> result;
    result.mixtures.resize(terms.size());
    for (std::size_t t = 0; t < terms.size(); ++t) {
        if (terms[t].top.empty() || terms[t].bottom.empty()) throw InvalidInput("empty face in min-norm problem");
        result.mixtures[t].top_weights.assign(terms[t].top.size(), S(0));
        result.mixtures[t].bottom_weights.assign(terms[t].bottom.size(), S(0));
    }
    if (terms.empty()) {
        result.point = BasicVertexFunction<S>(offset.size());
        for (std::size_t i = 0; i < offset.size(); ++i) result.point[i] = -offset[i];
        result.norm_sq = weighted_norm_sq<S>(degrees, result.point);
        return result;
    }

    constexpr bool exact = ScalarTraits<S>::exact;
    const S positive_floor = exact ? S(0) : S(1e-15);

    std::vector<Atom<S>> atoms;
    atoms.push_back(detail::make_atom(terms, degrees, offset, std::vector<std::size_t>(2 * terms.size(), 0)));
    std::vector<S> coeffs{S(1)};
    BasicVertexFunction<S> x = atoms.front().point;

    // Rounding in x is relative to the data, not to x: near a zero minimizer the
    // atoms themselves are cancellation residue.
    S input_sq(0);
    if constexpr (!exact) {
        S magnitude(0), min_degree = degrees[0];
        for (const auto& term : terms) magnitude += term.scale;
        S offset_max(0);
        for (std::size_t i = 0; i < offset.size(); ++i) offset_max = std::max(offset_max, S(std::abs(offset[i])));
        for (const S& d : degrees) min_degree = std::min(min_degree, d);
        magnitude += offset_max;
        input_sq = magnitude * magnitude / min_degree;
    }

    bool stalled = false;
    S best_xx(0);
    std::size_t idle = 0;
    std::size_t iter = 0;
    for (; iter < options.max_iterations; ++iter) {
        Atom<S> q = detail::linear_oracle(terms, degrees, offset, x);
        const S xx = weighted_norm_sq<S>(degrees, x);
        const S gap = xx - weighted_inner<S>(degrees, x, q.point);
        result.gap = gap;
        if constexpr (exact) {
            if (gap <= S(0)) break;
        } else {
            S scale = std::max(q.norm_sq, input_sq);
            for (const auto& a : atoms) scale = std::max(scale, a.norm_sq);
            if (gap <= S(options.tol) * std::max(scale, S(1e-300))) break;
            // Exact Wolfe strictly decreases |x|; a long run without progress is rounding.
            if (iter == 0 || xx < best_xx) {
                best_xx = xx;
                idle = 0;
            } else if (++idle >= 64) {
                break;
            }
        }
        bool duplicate = false;
        for (const auto& a : atoms)
            if (a.choice == q.choice) duplicate = true;
        if (duplicate) break;  // only reachable through rounding
        atoms.push_back(std::move(q));
        coeffs.push_back(S(0));

        // Minor cycle: move toward the affine minimizer until it lies inside the corral.
        while (true) {
            auto alpha = detail::affine_minimizer(atoms, degrees);
            if (!alpha) {
                if constexpr (exact) throw SolverError("min-norm point: affinely dependent corral");
                // Rounding made the corral dependent: keep the last iterate.
                atoms.pop_back();
                coeffs.pop_back();
                stalled = true;
                break;
            }
            bool interior = true;
            for (const S& a : *alpha)
                if (!(a > positive_floor)) interior = false;
            if (interior) {
                coeffs = std::move(*alpha);
                break;
            }
            S theta(1);
            std::size_t leaving = 0;
            for (std::size_t i = 0; i < atoms.size(); ++i) {
                if ((*alpha)[i] <= positive_floor) {
                    S denom = coeffs[i] - (*alpha)[i];
                    S t = denom > S(0) ? S(coeffs[i] / denom) : S(0);
                    if (t < theta) {
                        theta = t;
                        leaving = i;
                    }
                }
            }
            for (std::size_t i = 0; i < atoms.size(); ++i) coeffs[i] = (S(1) - theta) * coeffs[i] + theta * (*alpha)[i];
            coeffs[leaving] = S(0);
            std::vector<Atom<S>> kept_atoms;
            std::vector<S> kept_coeffs;
            for (std::size_t i = 0; i < atoms.size(); ++i) {
                if (coeffs[i] > positive_floor) {
                    kept_atoms.push_back(std::move(atoms[i]));
                    kept_coeffs.push_back(coeffs[i]);
                }
            }
            atoms = std::move(kept_atoms);
            coeffs = std::move(kept_coeffs);
            S total(0);
            for (const S& c : coeffs) total += c;
            for (S& c : coeffs) c /= total;
        }
        x = detail::combine(atoms, coeffs);
        if (stalled) break;
    }
    if (iter >= options.max_iterations) throw SolverError("min-norm point: iteration cap reached");

    result.point = x;
    result.norm_sq = weighted_norm_sq<S>(degrees, x);
    result.iterations = iter;
    for (std::size_t i = 0; i < atoms.size(); ++i) {
        for (std::size_t t = 0; t < terms.size(); ++t) {
            result.mixtures[t].top_weights[atoms[i].choice[2 * t]] += coeffs[i];
            result.mixtures[t].bottom_weights[atoms[i].choice[2 * t + 1]] += coeffs[i];
        }
    }
    return result;
}

}  // namespace hyper_ricci

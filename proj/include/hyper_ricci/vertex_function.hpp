#pragma once

#include "hyper_ricci/scalar.hpp"

#include <cassert>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace hyper_ricci {

/// A real-valued function on the dense vertex index range 0..n-1.
///
/// The weighted inner product <f, g> = sum f(x) g(x) / d_x needs the degrees,
/// so it lives in free functions taking the degree vector.
template <class S>
class BasicVertexFunction {
public:
    using value_type = S;

    BasicVertexFunction() = default;
    explicit BasicVertexFunction(std::size_t n, const S& fill = S(0)) : values_(n, fill) {}
    explicit BasicVertexFunction(std::vector<S> values) : values_(std::move(values)) {}
    BasicVertexFunction(std::initializer_list<S> values) : values_(values) {}

    std::size_t size() const { return values_.size(); }
    S& operator[](std::size_t i) { return values_[i]; }
    const S& operator[](std::size_t i) const { return values_[i]; }

    std::span<const S> values() const { return values_; }
    std::vector<S>& raw() { return values_; }
    const std::vector<S>& raw() const { return values_; }

    auto begin() { return values_.begin(); }
    auto end() { return values_.end(); }
    auto begin() const { return values_.begin(); }
    auto end() const { return values_.end(); }

    BasicVertexFunction& operator+=(const BasicVertexFunction& o) {
        assert(o.size() == size());
        for (std::size_t i = 0; i < values_.size(); ++i) values_[i] += o.values_[i];
        return *this;
    }
    BasicVertexFunction& operator-=(const BasicVertexFunction& o) {
        assert(o.size() == size());
        for (std::size_t i = 0; i < values_.size(); ++i) values_[i] -= o.values_[i];
        return *this;
    }
    BasicVertexFunction& operator*=(const S& c) {
        for (auto& v : values_) v *= c;
        return *this;
    }

    friend BasicVertexFunction operator+(BasicVertexFunction a, const BasicVertexFunction& b) { return a += b; }
    friend BasicVertexFunction operator-(BasicVertexFunction a, const BasicVertexFunction& b) { return a -= b; }
    friend BasicVertexFunction operator*(const S& c, BasicVertexFunction a) { return a *= c; }
    friend BasicVertexFunction operator*(BasicVertexFunction a, const S& c) { return a *= c; }
    friend BasicVertexFunction operator-(BasicVertexFunction a) { return a *= S(-1); }
    friend bool operator==(const BasicVertexFunction&, const BasicVertexFunction&) = default;

private:
    std::vector<S> values_;
};

using VertexFunction = BasicVertexFunction<double>;
using ExactVertexFunction = BasicVertexFunction<Rational>;

template <class S>
S weighted_inner(std::span<const S> degrees, const BasicVertexFunction<S>& f, const BasicVertexFunction<S>& g) {
    S acc(0);
    for (std::size_t i = 0; i < f.size(); ++i) acc += f[i] * g[i] / degrees[i];
    return acc;
}

template <class S>
S weighted_norm_sq(std::span<const S> degrees, const BasicVertexFunction<S>& f) {
    return weighted_inner(degrees, f, f);
}

inline double weighted_norm(std::span<const double> degrees, const VertexFunction& f) {
    return std::sqrt(weighted_norm_sq(degrees, f));
}

/// D^{-1} f: the "vertex value" view used by Lipschitz conditions.
template <class S>
BasicVertexFunction<S> divide_by_degree(std::span<const S> degrees, const BasicVertexFunction<S>& f) {
    BasicVertexFunction<S> out(f.size());
    for (std::size_t i = 0; i < f.size(); ++i) out[i] = f[i] / degrees[i];
    return out;
}

template <class S>
BasicVertexFunction<S> multiply_by_degree(std::span<const S> degrees, const BasicVertexFunction<S>& f) {
    BasicVertexFunction<S> out(f.size());
    for (std::size_t i = 0; i < f.size(); ++i) out[i] = f[i] * degrees[i];
    return out;
}

template <class S>
VertexFunction to_double(const BasicVertexFunction<S>& f) {
    VertexFunction out(f.size());
    for (std::size_t i = 0; i < f.size(); ++i) out[i] = to_double(f[i]);
    return out;
}

template <class S>
BasicVertexFunction<S> convert_function(const VertexFunction& f) {
    BasicVertexFunction<S> out(f.size());
    for (std::size_t i = 0; i < f.size(); ++i) out[i] = ScalarTraits<S>::from_double(f[i]);
    return out;
}

}  // namespace hyper_ricci

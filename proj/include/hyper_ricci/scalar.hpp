#pragma once

#include <boost/multiprecision/gmp.hpp>

#include <cmath>
#include <string>
#include <string_view>

namespace hyper_ricci {

// Expression templates are disabled so that `auto` locals hold values.
using Rational = boost::multiprecision::number<boost::multiprecision::gmp_rational,
                                               boost::multiprecision::et_off>;

template <class S>
struct ScalarTraits;

template <>
struct ScalarTraits<double> {
    static constexpr bool exact = false;
    static double from_double(double v) { return v; }
    static double from_rational(const Rational& q) { return q.convert_to<double>(); }
    static double to_double(double v) { return v; }
};

template <>
struct ScalarTraits<Rational> {
    static constexpr bool exact = true;
    static Rational from_double(double v) { return Rational(v); }
    static Rational from_rational(const Rational& q) { return q; }
    static double to_double(const Rational& v) { return v.convert_to<double>(); }
};

template <class S>
S abs_of(const S& v) {
    return v < S(0) ? S(-v) : v;
}

template <class S>
double to_double(const S& v) {
    return ScalarTraits<S>::to_double(v);
}

/// Parses "p/q", integers and plain decimals ("0.25", "1e-3") into an exact rational.
/// Throws std::invalid_argument on malformed text or a zero denominator.
Rational parse_rational(std::string_view text);

/// "p/q", or "p" when the denominator is 1.
std::string to_string(const Rational& q);

/// Fixed 12 significant digits; the report format relies on this.
std::string format_double(double v);

}  // namespace hyper_ricci

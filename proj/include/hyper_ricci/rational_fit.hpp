#pragma once

#include "hyper_ricci/scalar.hpp"

#include <cstddef>
#include <optional>
#include <vector>

namespace hyper_ricci {

/// h(lambda) = p(s) / q(s), s = lambda / scale, q(0) = 1, deg p = deg q = degree.
struct RationalFit {
    std::vector<double> numerator;
    std::vector<double> denominator;  // denominator[0] == 1
    double scale = 1.0;
    std::size_t degree = 0;
    /// Largest |h(lambda_i) - y_i| over the samples the fit was checked against.
    double max_residual = 0.0;

    double evaluate(double lambda) const;
    double value_at_zero() const { return numerator.front(); }
    /// h'(0) = (p_1 - p_0 q_1) / scale
    double derivative_at_zero() const;
};

/// Linearized least squares on p(s) - y (q(s) - 1) = y followed by one
/// Gauss-Newton step on the true residual (kept only if it helps). Needs at
/// least 2 * degree + 1 samples; returns nothing when the system is degenerate.
std::optional<RationalFit> fit_rational(const std::vector<double>& lambdas, const std::vector<double>& values,
                                        std::size_t degree);

/// Exact rational interpolant through the first 2 * degree + 1 samples.
struct ExactRationalFit {
    std::vector<Rational> numerator;
    std::vector<Rational> denominator;
    std::size_t degree = 0;

    Rational evaluate(const Rational& lambda) const;
    const Rational& value_at_zero() const { return numerator.front(); }
    Rational derivative_at_zero() const;
};

std::optional<ExactRationalFit> interpolate_rational(const std::vector<Rational>& lambdas,
                                                     const std::vector<Rational>& values, std::size_t degree);

}  // namespace hyper_ricci

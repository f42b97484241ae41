#include "hyper_ricci/rational_fit.hpp"

#include "hyper_ricci/dense.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>

namespace hyper_ricci {

namespace {

template <class S>
S horner(const std::vector<S>& coeffs, const S& s) {
    S acc(0);
    for (std::size_t i = coeffs.size(); i-- > 0;) acc = acc * s + coeffs[i];
    return acc;
}

}  // namespace

double RationalFit::evaluate(double lambda) const {
    const double s = lambda / scale;
    return horner(numerator, s) / horner(denominator, s);
}

double RationalFit::derivative_at_zero() const {
    const double p1 = degree >= 1 ? numerator[1] : 0.0;
    const double q1 = degree >= 1 ? denominator[1] : 0.0;
    return (p1 - numerator[0] * q1) / scale;
}

std::optional<RationalFit> fit_rational(const std::vector<double>& lambdas, const std::vector<double>& values,
                                        std::size_t degree) {
    const std::size_t k = lambdas.size();
    const std::size_t unknowns = 2 * degree + 1;
    if (values.size() != k || k < unknowns) return std::nullopt;
    double scale = 0.0;
    for (double l : lambdas) scale = std::max(scale, std::abs(l));
    if (scale == 0.0) return std::nullopt;

    Eigen::MatrixXd a(k, unknowns);
    Eigen::VectorXd b(k);
    for (std::size_t i = 0; i < k; ++i) {
        const double s = lambdas[i] / scale;
        double power = 1.0;
        for (std::size_t j = 0; j <= degree; ++j) {
            a(i, j) = power;
            if (j >= 1) a(i, degree + j) = -values[i] * power;
            power *= s;
        }
        b(i) = values[i];
    }
    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(a);
    if (qr.rank() < static_cast<Eigen::Index>(unknowns)) return std::nullopt;
    Eigen::VectorXd c = qr.solve(b);

    RationalFit fit;
    fit.scale = scale;
    fit.degree = degree;
    auto unpack = [&](const Eigen::VectorXd& v) {
        fit.numerator.assign(v.data(), v.data() + degree + 1);
        fit.denominator.assign(degree + 1, 1.0);
        for (std::size_t j = 1; j <= degree; ++j) fit.denominator[j] = v(static_cast<Eigen::Index>(degree + j));
    };
    auto max_residual = [&] {
        double r = 0.0;
        for (std::size_t i = 0; i < k; ++i) {
            const double e = fit.evaluate(lambdas[i]) - values[i];
            r = std::max(r, std::isfinite(e) ? std::abs(e) : std::numeric_limits<double>::infinity());
        }
        return r;
    };
    unpack(c);
    double residual = max_residual();

    // One Gauss-Newton step on r_i = p(s_i)/q(s_i) - y_i.
    Eigen::MatrixXd jac(k, unknowns);
    Eigen::VectorXd r(k);
    for (std::size_t i = 0; i < k; ++i) {
        const double s = lambdas[i] / scale;
        const double p = horner(fit.numerator, s), q = horner(fit.denominator, s);
        r(i) = p / q - values[i];
        double power = 1.0;
        for (std::size_t j = 0; j <= degree; ++j) {
            jac(i, j) = power / q;
            if (j >= 1) jac(i, degree + j) = -p * power / (q * q);
            power *= s;
        }
    }
    Eigen::VectorXd step = jac.colPivHouseholderQr().solve(-r);
    if (step.allFinite()) {
        const RationalFit saved = fit;
        unpack(c + step);
        const double refined = max_residual();
        if (refined < residual) {
            residual = refined;
            c += step;
        } else {
            fit = saved;
        }
    }
    fit.max_residual = residual;
    if (!std::isfinite(residual)) return std::nullopt;
    return fit;
}

Rational ExactRationalFit::evaluate(const Rational& lambda) const {
    return horner(numerator, lambda) / horner(denominator, lambda);
}

Rational ExactRationalFit::derivative_at_zero() const {
    if (degree == 0) return Rational(0);
    return numerator[1] - numerator[0] * denominator[1];
}

std::optional<ExactRationalFit> interpolate_rational(const std::vector<Rational>& lambdas,
                                                     const std::vector<Rational>& values, std::size_t degree) {
    const std::size_t unknowns = 2 * degree + 1;
    if (lambdas.size() < unknowns || values.size() < unknowns) return std::nullopt;
    DenseMatrix<Rational> a(unknowns, unknowns);
    std::vector<Rational> b(unknowns);
    for (std::size_t i = 0; i < unknowns; ++i) {
        Rational power(1);
        for (std::size_t j = 0; j <= degree; ++j) {
            a(i, j) = power;
            if (j >= 1) a(i, degree + j) = -values[i] * power;
            power *= lambdas[i];
        }
        b[i] = values[i];
    }
    auto c = solve_linear(std::move(a), std::move(b));
    if (!c) return std::nullopt;
    ExactRationalFit fit;
    fit.degree = degree;
    fit.numerator.assign(c->begin(), c->begin() + static_cast<std::ptrdiff_t>(degree + 1));
    fit.denominator.assign(degree + 1, Rational(1));
    for (std::size_t j = 1; j <= degree; ++j) fit.denominator[j] = (*c)[degree + j];
    // A pole at a sample would make the interpolant meaningless there.
    for (std::size_t i = 0; i < unknowns; ++i)
        if (horner(fit.denominator, lambdas[i]) == 0) return std::nullopt;
    return fit;
}

}  // namespace hyper_ricci

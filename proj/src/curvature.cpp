#include "hyper_ricci/curvature.hpp"

#include "hyper_ricci/laplacian.hpp"
#include "hyper_ricci/parallel.hpp"
#include "hyper_ricci/resolvent.hpp"

#include <spdlog/spdlog.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

namespace hyper_ricci {

std::vector<double> default_lambda_schedule() {
    std::vector<double> out;
    for (int k = 0; k <= 12; ++k) out.push_back(0.1 * std::ldexp(1.0, -k));
    return out;
}

namespace {

void check_pair(const HypergraphSystem& system, VertexIndex x, VertexIndex y) {
    if (x >= system.size() || y >= system.size()) throw InvalidInput("vertex index out of range");
    if (x == y) throw InvalidInput("curvature needs two distinct vertices");
}

/// The schedule's decimal value as an exact rational (0.1 * 2^-k stays short in decimal).
Rational decimal_rational(double v) { return parse_rational(format_double(v)); }

struct KdSample {
    double kd = 0.0;
    std::optional<Rational> exact;
    bool exact_lp = false;
};

KdSample sample_kd(const HypergraphSystem& system, VertexIndex x, VertexIndex y, double lambda,
                   const CurvatureOptions& options) {
    KdSample s;
    if (system.size() <= options.cap) {
        KDOptions kd_options;
        kd_options.cap = options.cap;
        kd_options.threads = options.threads;
        if (options.mode == ArithmeticMode::Rational) {
            auto r = kd_exact<Rational>(system, x, y, decimal_rational(lambda), kd_options);
            s.exact = r.value;
            s.kd = to_double(r.value);
        } else {
            s.kd = kd_exact<double>(system, x, y, lambda, kd_options).value;
        }
        s.exact_lp = true;
    } else {
        KDHeuristicOptions h;
        h.restarts = options.restarts;
        h.seed = options.seed;
        s.kd = kd_heuristic(system, x, y, lambda, h).value;
    }
    return s;
}

bool fit_float(CurvatureReport& report, const CurvatureOptions& options) {
    const double d = static_cast<double>(report.distance);
    const std::size_t total = report.samples.size();
    for (std::size_t drop = 0; drop + 2 <= total; ++drop) {
        std::vector<double> lambdas, values;
        for (std::size_t i = drop; i < total; ++i) {
            lambdas.push_back(report.samples[i].lambda);
            values.push_back(report.samples[i].kd);
        }
        for (std::size_t m = 0; m <= options.fit_degree; ++m) {
            if (lambdas.size() < 2 * m + 2) break;
            auto fit = fit_rational(lambdas, values, m);
            if (!fit || fit->max_residual > options.residual_tol) continue;
            if (std::abs(fit->value_at_zero() - d) > 1e-6) continue;
            const double kappa = -fit->derivative_at_zero() / d;
            bool stable = true;
            for (std::size_t skip = 0; skip < lambdas.size() && stable; ++skip) {
                std::vector<double> l2, v2;
                for (std::size_t i = 0; i < lambdas.size(); ++i) {
                    if (i == skip) continue;
                    l2.push_back(lambdas[i]);
                    v2.push_back(values[i]);
                }
                auto loo = fit_rational(l2, v2, m);
                if (!loo || std::abs(-loo->derivative_at_zero() / d - kappa) > options.stability_tol) stable = false;
            }
            if (!stable) continue;
            report.fit = fit;
            report.dropped = drop;
            report.kappa = kappa;
            report.method = "rational-fit";
            return true;
        }
    }
    return false;
}

bool fit_exact(CurvatureReport& report, const std::vector<Rational>& exact_lambdas,
               const std::vector<Rational>& exact_values, const CurvatureOptions& options) {
    // Ascending in lambda: the rational regime is guaranteed only below some threshold.
    std::vector<std::size_t> order(exact_lambdas.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return exact_lambdas[a] < exact_lambdas[b]; });
    std::vector<Rational> ls, vs;
    for (std::size_t i : order) {
        ls.push_back(exact_lambdas[i]);
        vs.push_back(exact_values[i]);
    }
    const Rational d(static_cast<long>(report.distance));
    std::optional<ExactRationalFit> best;
    std::size_t best_matched = 0;
    for (std::size_t m = 0; m <= options.fit_degree; ++m) {
        const std::size_t base = 2 * m + 1;
        if (ls.size() < base + 1) break;
        auto fit = interpolate_rational(ls, vs, m);
        if (!fit || fit->value_at_zero() != d) continue;
        std::size_t matched = 0;
        for (std::size_t i = base; i < ls.size() && fit->evaluate(ls[i]) == vs[i]; ++i) ++matched;
        if (matched >= 2 && (!best || base + matched > 2 * best->degree + 1 + best_matched)) {
            best = fit;
            best_matched = matched;
        }
        if (best && base + matched == ls.size()) break;
    }
    if (!best) return false;
    const Rational kappa = -best->derivative_at_zero() / d;
    report.exact_kappa = kappa;
    report.kappa = to_double(kappa);
    report.dropped = ls.size() - (2 * best->degree + 1) - best_matched;
    RationalFit fit;
    fit.degree = best->degree;
    fit.scale = 1.0;
    for (const auto& c : best->numerator) fit.numerator.push_back(to_double(c));
    for (const auto& c : best->denominator) fit.denominator.push_back(to_double(c));
    fit.max_residual = 0.0;
    report.fit = fit;
    report.method = "rational-interpolation";
    return true;
}

}  // namespace

double kappa_lambda(const HypergraphSystem& system, VertexIndex x, VertexIndex y, double lambda,
                    const CurvatureOptions& options) {
    check_pair(system, x, y);
    if (!(lambda > 0.0)) throw InvalidInput("lambda must be positive");
    const KdSample s = sample_kd(system, x, y, lambda, options);
    return 1.0 - s.kd / static_cast<double>(system.distance(x, y));
}

CurvatureReport estimate_kappa(const HypergraphSystem& system, VertexIndex x, VertexIndex y,
                               const CurvatureOptions& options) {
    check_pair(system, x, y);
    const auto& lambdas = options.lambdas;
    if (lambdas.size() < 2 * options.fit_degree + 2 && lambdas.size() < 4)
        throw InvalidInput("lambda schedule too short for the fit degree");
    for (std::size_t i = 0; i < lambdas.size(); ++i) {
        if (!(lambdas[i] > 0.0)) throw InvalidInput("lambda values must be positive");
        if (i > 0 && !(lambdas[i] < lambdas[i - 1])) throw InvalidInput("lambda schedule must decrease");
    }
    CurvatureReport report;
    report.x = x;
    report.y = y;
    report.distance = system.distance(x, y);
    const double d = static_cast<double>(report.distance);
    report.lower_envelope = -2.0 * std::sqrt(system.volume()) * system.max_inv_sqrt_degree() / d;

    std::vector<Rational> exact_lambdas, exact_values;
    report.kd_exact = true;
    for (double lambda : lambdas) {
        const KdSample s = sample_kd(system, x, y, lambda, options);
        CurvatureSample sample;
        sample.lambda = lambda;
        sample.kd = s.kd;
        sample.kappa_lambda = 1.0 - s.kd / d;
        if (s.exact) {
            sample.exact_kd = to_string(*s.exact);
            exact_lambdas.push_back(decimal_rational(lambda));
            exact_values.push_back(*s.exact);
        }
        report.kd_exact = report.kd_exact && s.exact_lp;
        report.samples.push_back(std::move(sample));
    }

    bool fitted = false;
    if (options.mode == ArithmeticMode::Rational && exact_values.size() == lambdas.size())
        fitted = fit_exact(report, exact_lambdas, exact_values, options);
    if (!fitted) fitted = fit_float(report, options);
    report.certified = fitted && report.kd_exact;

    if (fitted) {
        report.kappa_lower = report.kappa_upper = report.kappa;
    } else {
        // Polynomial extrapolation of kappa_lambda / lambda from the finest samples.
        const std::size_t take = std::min<std::size_t>(4, report.samples.size());
        std::vector<double> ls, qs;
        for (std::size_t i = report.samples.size() - take; i < report.samples.size(); ++i) {
            ls.push_back(report.samples[i].lambda);
            qs.push_back(report.samples[i].kappa_lambda / report.samples[i].lambda);
        }
        report.kappa = neville_at_zero(ls, qs);
        report.kappa_lower = *std::min_element(qs.begin(), qs.end());
        report.kappa_upper = *std::max_element(qs.begin(), qs.end());
        report.method = "extrapolation";
        spdlog::warn("curvature ({}, {}): rational fit not certified, extrapolated {:.6g}", system.vertex_id(x),
                     system.vertex_id(y), report.kappa);
    }
    return report;
}

GlobalCurvature global_curvature(const HypergraphSystem& system, const CurvatureOptions& options,
                                 std::size_t nonadjacent_samples) {
    const std::size_t n = system.size();
    if (n < 2) throw InvalidInput("global curvature needs at least two vertices");
    // Undirected cut functions make KD symmetric (f -> diam D 1 - f); hyperarcs do not.
    const bool ordered = system.has_directed_edges();
    std::vector<std::pair<VertexIndex, VertexIndex>> adjacent, far;
    for (VertexIndex a = 0; a < n; ++a)
        for (VertexIndex b = ordered ? 0 : a + 1; b < n; ++b)
            if (a != b) (system.adjacent(a, b) ? adjacent : far).emplace_back(a, b);
    std::mt19937_64 rng(options.seed);
    std::shuffle(far.begin(), far.end(), rng);
    far.resize(std::min(far.size(), nonadjacent_samples));

    CurvatureOptions inner = options;
    inner.threads = 1;
    GlobalCurvature out;
    out.adjacent.resize(adjacent.size());
    out.sampled_nonadjacent.resize(far.size());
    parallel_for(adjacent.size() + far.size(), options.threads, [&](std::size_t i) {
        if (i < adjacent.size())
            out.adjacent[i] = estimate_kappa(system, adjacent[i].first, adjacent[i].second, inner);
        else
            out.sampled_nonadjacent[i - adjacent.size()] =
                estimate_kappa(system, far[i - adjacent.size()].first, far[i - adjacent.size()].second, inner);
    });
    out.certified = true;
    for (std::size_t i = 0; i < out.adjacent.size(); ++i) {
        const auto& r = out.adjacent[i];
        if (i == 0 || r.kappa < out.kappa) {
            out.kappa = r.kappa;
            out.x = r.x;
            out.y = r.y;
        }
        out.certified = out.certified && r.certified;
    }
    for (const auto& r : out.sampled_nonadjacent)
        if (r.kappa < out.kappa - 1e-6) out.reduction_holds = false;
    return out;
}

UpperBoundC upper_bound_C(const HypergraphSystem& system, VertexIndex x, VertexIndex y, std::size_t n_candidates,
                          std::uint64_t seed) {
    check_pair(system, x, y);
    if (n_candidates < 1) throw InvalidInput("need at least one candidate");
    const std::size_t n = system.size();
    const double d = static_cast<double>(system.distance(x, y));
    std::mt19937_64 rng(seed);

    // McShane-style extension: each free vertex takes an endpoint of its
    // feasible interval given the vertices fixed so far.
    auto candidate = [&](int policy) {
        std::vector<double> phi(n, 0.0);
        std::vector<bool> fixed(n, false);
        phi[y] = 0.0;
        phi[x] = d;
        fixed[x] = fixed[y] = true;
        std::vector<VertexIndex> rest;
        for (VertexIndex v = 0; v < n; ++v)
            if (!fixed[v]) rest.push_back(v);
        if (policy == 2) std::shuffle(rest.begin(), rest.end(), rng);
        for (VertexIndex v : rest) {
            double lo = -std::numeric_limits<double>::infinity(), hi = std::numeric_limits<double>::infinity();
            for (VertexIndex w = 0; w < n; ++w) {
                if (!fixed[w]) continue;
                const double dist = static_cast<double>(system.distance(v, w));
                lo = std::max(lo, phi[w] - dist);
                hi = std::min(hi, phi[w] + dist);
            }
            bool take_low = policy == 0 || (policy == 2 && std::bernoulli_distribution(0.5)(rng));
            phi[v] = take_low ? lo : hi;
            fixed[v] = true;
        }
        return multiply_by_degree(system.degrees(), VertexFunction(phi));
    };

    UpperBoundC out;
    out.value = std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < n_candidates; ++k) {
        const VertexFunction f = candidate(k == 0 ? 0 : k == 1 ? 1 : 2);
        const auto image = canonical_laplacian<double>(system, f, true);
        const auto& l0 = image.representative;
        const double value = (l0[x] / system.degree(x) - l0[y] / system.degree(y)) / d;
        ++out.candidates;
        if (value < out.value) {
            out.value = value;
            out.potential = f;
        }
    }
    return out;
}

EigenBoundCheck verify_eigen_bound(const HypergraphSystem& system, const VertexFunction& f, double mu, double kappa,
                                   double tol) {
    if (!(mu > 0.0)) throw InvalidInput("eigenvalue must be positive");
    const auto image = canonical_laplacian<double>(system, f, true);
    const VertexFunction scaled = mu * f;
    EigenBoundCheck out;
    out.mu = mu;
    out.kappa = kappa;
    out.eigen_residual = system.norm(image.representative - scaled);
    if (out.eigen_residual > 1e-8 * std::max(1.0, system.norm(scaled)))
        throw InvalidInput("not an eigenpair: |𝓛⁰f - mu f| = " + std::to_string(out.eigen_residual));
    out.holds = kappa <= mu + tol;
    return out;
}

std::vector<GradientCheckRow> verify_gradient_estimate(const HypergraphSystem& system, const VertexFunction& f,
                                                       const std::vector<double>& ts, double lambda, double kappa,
                                                       double slack_factor) {
    VertexFunction start = f;
    const double lip = LipschitzPolytope::lipschitz_constant(system, f);
    if (lip > 1.0) start = (1.0 / lip) * f;
    const auto trajectory = heat_trajectory(system, start, ts, lambda);
    std::vector<GradientCheckRow> rows;
    for (const auto& sample : trajectory) {
        GradientCheckRow row;
        row.t = sample.t;
        row.lipschitz = LipschitzPolytope::lipschitz_constant(system, sample.f);
        row.bound = std::exp(-kappa * sample.t);
        row.slack = slack_factor * lambda;
        row.holds = row.lipschitz <= row.bound + row.slack;
        rows.push_back(row);
    }
    return rows;
}

DiameterCheck verify_diameter_bound(const HypergraphSystem& system, double kappa, double tol) {
    DiameterCheck out;
    if (!(kappa > 0.0)) return out;
    out.applicable = true;
    out.bound = 2.0 / kappa;
    out.margin = out.bound - static_cast<double>(system.diameter());
    out.holds = out.margin >= -tol;
    return out;
}

}  // namespace hyper_ricci

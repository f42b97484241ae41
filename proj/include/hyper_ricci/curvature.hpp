#pragma once

#include "hyper_ricci/kantorovich.hpp"
#include "hyper_ricci/rational_fit.hpp"
#include "hyper_ricci/system.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace hyper_ricci {

enum class ArithmeticMode { Float, Rational };

/// lambda_k = 0.1 * 2^{-k}, k = 0..12
std::vector<double> default_lambda_schedule();

struct CurvatureOptions {
    std::vector<double> lambdas = default_lambda_schedule();
    /// Largest numerator/denominator degree tried by the fit.
    std::size_t fit_degree = 3;
    ArithmeticMode mode = ArithmeticMode::Float;
    std::size_t cap = 8;
    std::size_t restarts = 32;
    std::uint64_t seed = 1;
    std::size_t threads = 1;
    /// Float certification thresholds.
    double residual_tol = 1e-9;
    double stability_tol = 1e-6;
};

struct CurvatureSample {
    double lambda = 0.0;
    double kd = 0.0;
    /// 1 - KD / d(x, y)
    double kappa_lambda = 0.0;
    /// "p/q" in rational mode.
    std::string exact_kd;
};

struct CurvatureReport {
    VertexIndex x = 0;
    VertexIndex y = 0;
    std::size_t distance = 0;
    std::vector<CurvatureSample> samples;
    std::optional<RationalFit> fit;
    /// Samples (largest lambdas first) left out of the fit.
    std::size_t dropped = 0;
    double kappa = 0.0;
    /// Present when rational mode certified the limit exactly.
    std::optional<Rational> exact_kappa;
    /// Lower and upper limits of kappa_lambda / lambda; equal when certified.
    double kappa_lower = 0.0;
    double kappa_upper = 0.0;
    bool kd_exact = false;
    bool certified = false;
    /// "rational-fit", "rational-interpolation" or "extrapolation"
    std::string method;
    /// -2 vol(V)^{1/2} M / d(x, y)
    double lower_envelope = 0.0;
};

/// 1 - KD_lambda(x, y) / d(x, y); exact LP below the cap, heuristic above.
double kappa_lambda(const HypergraphSystem& system, VertexIndex x, VertexIndex y, double lambda,
                    const CurvatureOptions& options = {});

/// kappa(x, y) = lim (1 - KD_lambda / d) / lambda from a rational fit of KD_lambda.
CurvatureReport estimate_kappa(const HypergraphSystem& system, VertexIndex x, VertexIndex y,
                               const CurvatureOptions& options = {});

struct GlobalCurvature {
    double kappa = 0.0;
    VertexIndex x = 0;
    VertexIndex y = 0;
    bool certified = false;
    std::vector<CurvatureReport> adjacent;
    /// Non-adjacent pairs checked against the adjacent minimum.
    std::vector<CurvatureReport> sampled_nonadjacent;
    bool reduction_holds = true;
};

/// Infimum of kappa over adjacent pairs, plus a check that sampled non-adjacent
/// pairs do not go below it.
GlobalCurvature global_curvature(const HypergraphSystem& system, const CurvatureOptions& options = {},
                                 std::size_t nonadjacent_samples = 4);

struct UpperBoundC {
    double value = 0.0;
    VertexFunction potential;
    std::size_t candidates = 0;
};

/// min <𝓛⁰ f, delta_x - delta_y> / d(x, y) over sampled weighted 1-Lipschitz f with
/// <f, delta_x - delta_y> = d(x, y); an upper bound on the upper curvature.
UpperBoundC upper_bound_C(const HypergraphSystem& system, VertexIndex x, VertexIndex y, std::size_t n_candidates,
                          std::uint64_t seed = 1);

struct EigenBoundCheck {
    double eigen_residual = 0.0;
    double mu = 0.0;
    double kappa = 0.0;
    bool holds = false;
};

/// Checks 𝓛⁰ f = mu f (throws InvalidInput if not, to 1e-8 relative) and kappa <= mu + tol.
EigenBoundCheck verify_eigen_bound(const HypergraphSystem& system, const VertexFunction& f, double mu, double kappa,
                                   double tol = 1e-6);

struct GradientCheckRow {
    double t = 0.0;
    double lipschitz = 0.0;
    double bound = 0.0;
    double slack = 0.0;
    bool holds = false;
};

/// Lipschitz constant of D^{-1} h_t f against e^{-kappa t} + slack_factor * lambda,
/// with f rescaled to be weighted 1-Lipschitz first.
std::vector<GradientCheckRow> verify_gradient_estimate(const HypergraphSystem& system, const VertexFunction& f,
                                                       const std::vector<double>& ts, double lambda, double kappa,
                                                       double slack_factor = 10.0);

struct DiameterCheck {
    bool applicable = false;
    bool holds = true;
    double bound = 0.0;
    double margin = 0.0;
};

/// diam <= 2 / kappa when kappa > 0; otherwise "not applicable" and passes.
DiameterCheck verify_diameter_bound(const HypergraphSystem& system, double kappa, double tol = 1e-9);

}  // namespace hyper_ricci

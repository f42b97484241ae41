#include "hyper_ricci/resolvent.hpp"

#include "hyper_ricci/laplacian.hpp"
#include "hyper_ricci/polytope.hpp"

#include <spdlog/spdlog.h>

#include <algorithm>
#include <cmath>

namespace hyper_ricci {

const char* to_string(ResolventMethod method) {
    switch (method) {
        case ResolventMethod::Proximal:
            return "proximal";
        case ResolventMethod::RegionExact:
            return "region-exact";
    }
    return "unknown";
}

namespace {

template <class S>
S max_abs(const std::vector<S>& v) {
    S m(0);
    for (const S& x : v) m = std::max(m, abs_of(x));
    return m;
}

template <class S>
void check_inputs(const HypergraphSystem& system, const BasicVertexFunction<S>& f, const S& lambda) {
    if (f.size() != system.size()) throw InvalidInput("function size does not match the system");
    if (!(lambda > S(0))) throw InvalidInput("lambda must be positive");
}

}  // namespace

template <class S>
RegionMatrix<S> region_matrix(const HypergraphSystem& system, const WeakOrder& order, const S& lambda) {
    const auto edges = region_edges(system, order);
    auto c = contracted_matrix(system, order, edges, lambda);
    auto inv = invert(c);
    if (!inv) throw SolverError("contracted region matrix is singular");
    RegionMatrix<S> out{order, lambda, DenseMatrix<S>(system.size(), system.size())};
    for (VertexIndex i = 0; i < system.size(); ++i)
        for (VertexIndex j = 0; j < system.size(); ++j) out.n(i, j) = (*inv)(order.rank(i), order.rank(j));
    return out;
}

template <class S>
std::optional<ResolventResult<S>> resolve_in_region(const HypergraphSystem& system, const BasicVertexFunction<S>& f,
                                                    const S& lambda, const WeakOrder& order) {
    check_inputs(system, f, lambda);
    constexpr bool exact = ScalarTraits<S>::exact;
    const auto degrees = system.degrees_as<S>();
    const auto edges = region_edges(system, order);
    auto u = solve_linear(contracted_matrix(system, order, edges, lambda), block_sums(order, f));
    if (!u) throw SolverError("contracted region matrix is singular");

    const S scale = std::max(S(1), max_abs(*u));
    for (std::size_t i = 0; i + 1 < u->size(); ++i) {
        const S drop = (*u)[i] - (*u)[i + 1];
        if constexpr (exact) {
            if (drop < S(0)) return std::nullopt;
        } else {
            if (drop < -1e-12 * scale) return std::nullopt;
        }
    }

    ResolventResult<S> result;
    result.method = ResolventMethod::RegionExact;
    result.region = order;
    result.g = BasicVertexFunction<S>(system.size());
    result.residual = BasicVertexFunction<S>(system.size());
    for (VertexIndex v = 0; v < system.size(); ++v) {
        result.g[v] = degrees[v] * (*u)[order.rank(v)];
        result.residual[v] = (f[v] - result.g[v]) / lambda;
    }
    // The region's faces are contained in the true faces at g (ties only enlarge
    // them), so membership here certifies residual in 𝓛 g.
    const auto terms = region_terms(system, edges, *u);
    MinNormOptions mn;
    mn.tol = 1e-20;
    auto mnp = min_norm_point<S>(terms, degrees, result.residual, mn);
    if constexpr (exact) {
        if (mnp.norm_sq != 0) return std::nullopt;
        result.optimality_gap = S(0);
    } else {
        const double dist = std::sqrt(std::max(mnp.norm_sq, 0.0));
        double fnorm = std::sqrt(weighted_norm_sq<double>(degrees, f));
        // A residual error e moves the certified point by at most lambda*|e| (non-expansiveness).
        const double accept = 1e-10 * std::max(1.0, fnorm) / lambda + 1e-12;
        if (!(dist <= accept)) return std::nullopt;
        result.optimality_gap = dist;
    }
    return result;
}

template <class S>
ResolventResult<S> resolve_region_exact(const HypergraphSystem& system, const BasicVertexFunction<S>& f,
                                        const S& lambda, const RegionExactOptions& options) {
    check_inputs(system, f, lambda);
    if (system.size() > options.cap)
        throw InvalidInput("region enumeration cap is " + std::to_string(options.cap) + ", system has " +
                           std::to_string(system.size()) + " vertices");
    std::optional<ResolventResult<S>> accepted;
    std::size_t candidates = 0;
    for_each_weak_order(system.size(), [&](const WeakOrder& order) {
        auto candidate = resolve_in_region(system, f, lambda, order);
        if (!candidate) return true;
        ++candidates;
        if (!accepted) {
            accepted = std::move(candidate);
            return true;
        }
        // Uniqueness of J_lambda: every accepted region must give the same g.
        if constexpr (ScalarTraits<S>::exact) {
            if (candidate->g != accepted->g) throw SolverError("accepted regions disagree on J_lambda f");
        } else {
            double scale = 1.0;
            for (double v : f) scale = std::max(scale, std::abs(v));
            for (VertexIndex v = 0; v < system.size(); ++v)
                if (std::abs(candidate->g[v] - accepted->g[v]) > options.agreement_tol * scale)
                    throw SolverError("accepted regions disagree on J_lambda f");
        }
        return true;
    });
    if (!accepted) throw SolverError("no region accepted for J_lambda f");
    spdlog::debug("region-exact resolvent: {} accepted region(s)", candidates);
    return *accepted;
}

namespace {

/// Dual variables of the proximal problem, flattened: per edge, tails then heads.
struct DualLayout {
    std::vector<std::size_t> offset;  // start of edge e; heads start at offset + |tails|
    std::size_t total = 0;

    explicit DualLayout(const HypergraphSystem& system) {
        for (const Edge& e : system.edges()) {
            offset.push_back(total);
            total += e.tails().size() + e.heads().size();
        }
    }
};

class ProxDual {
public:
    ProxDual(const HypergraphSystem& system, const VertexFunction& f, double lambda)
        : system_(system), f_(f), lambda_(lambda), layout_(system) {}

    std::size_t dimension() const { return layout_.total; }

    VertexFunction aggregate(const std::vector<double>& z) const {
        VertexFunction y(system_.size());
        for (std::size_t e = 0; e < system_.edge_count(); ++e) {
            const Edge& edge = system_.edge(e);
            std::size_t k = layout_.offset[e];
            for (VertexIndex x : edge.tails()) y[x] += z[k++];
            for (VertexIndex h : edge.heads()) y[h] -= z[k++];
        }
        return y;
    }

    double edge_mass(const std::vector<double>& z, std::size_t e) const {
        const Edge& edge = system_.edge(e);
        const std::size_t n = edge.tails().size() + edge.heads().size();
        double s = 0.0;
        for (std::size_t k = layout_.offset[e]; k < layout_.offset[e] + n; ++k) s += z[k];
        return s / 2.0;
    }

    VertexFunction primal(const std::vector<double>& z) const { return f_ - lambda_ * aggregate(z); }

    double value(const std::vector<double>& z) const {
        const VertexFunction y = aggregate(z);
        double phi = system_.inner(y, f_) - 0.5 * lambda_ * system_.inner(y, y);
        for (std::size_t e = 0; e < system_.edge_count(); ++e) {
            const double t = edge_mass(z, e);
            phi -= t * t / (2.0 * system_.weight(e));
        }
        return phi;
    }

    std::vector<double> gradient(const std::vector<double>& z) const {
        const VertexFunction u = divide_by_degree(system_.degrees(), primal(z));
        std::vector<double> grad(z.size());
        for (std::size_t e = 0; e < system_.edge_count(); ++e) {
            const Edge& edge = system_.edge(e);
            const double pull = edge_mass(z, e) / (2.0 * system_.weight(e));
            std::size_t k = layout_.offset[e];
            for (VertexIndex x : edge.tails()) grad[k++] = u[x] - pull;
            for (VertexIndex h : edge.heads()) grad[k++] = -u[h] - pull;
        }
        return grad;
    }

    double primal_value(const VertexFunction& g) const {
        const VertexFunction diff = f_ - g;
        return system_.inner(diff, diff) / (2.0 * lambda_) +
               energy_q<double>(system_, divide_by_degree(system_.degrees(), g));
    }

    /// Euclidean projection onto {mu >= 0, nu >= 0, sum mu = sum nu} per edge.
    void project(std::vector<double>& z) const {
        for (std::size_t e = 0; e < system_.edge_count(); ++e) {
            const Edge& edge = system_.edge(e);
            const std::size_t nt = edge.tails().size();
            const std::size_t nh = edge.heads().size();
            double* a = z.data() + layout_.offset[e];
            double* b = a + nt;
            // mu = (a - theta)_+, nu = (b + theta)_+ with sum mu = sum nu; the balance
            // h(theta) = sum mu - sum nu is non-increasing and piecewise linear.
            auto balance = [&](double theta) {
                double h = 0.0;
                for (std::size_t i = 0; i < nt; ++i) h += std::max(a[i] - theta, 0.0);
                for (std::size_t j = 0; j < nh; ++j) h -= std::max(b[j] + theta, 0.0);
                return h;
            };
            std::vector<double> breaks;
            for (std::size_t i = 0; i < nt; ++i) breaks.push_back(a[i]);
            for (std::size_t j = 0; j < nh; ++j) breaks.push_back(-b[j]);
            std::sort(breaks.begin(), breaks.end());
            double theta;
            const double h0 = balance(breaks.front());
            if (h0 <= 0.0) {
                // Left of every breakpoint: h = sum a - nt*theta (all nu are zero there).
                double sa = 0.0;
                for (std::size_t i = 0; i < nt; ++i) sa += a[i];
                theta = sa / static_cast<double>(nt);
                theta = std::min(theta, breaks.front());
            } else {
                theta = breaks.back();
                double lo = breaks.front(), hlo = h0;
                for (std::size_t k = 1; k < breaks.size(); ++k) {
                    const double hk = balance(breaks[k]);
                    if (hk <= 0.0) {
                        const double hi = breaks[k];
                        theta = hlo == hk ? hi : lo + (hi - lo) * hlo / (hlo - hk);
                        break;
                    }
                    lo = breaks[k];
                    hlo = hk;
                }
            }
            for (std::size_t i = 0; i < nt; ++i) a[i] = std::max(a[i] - theta, 0.0);
            for (std::size_t j = 0; j < nh; ++j) b[j] = std::max(b[j] + theta, 0.0);
        }
    }

private:
    const HypergraphSystem& system_;
    const VertexFunction& f_;
    double lambda_;
    DualLayout layout_;
};

std::optional<ResolventResult<double>> polish(const HypergraphSystem& system, const VertexFunction& f, double lambda,
                                              const VertexFunction& g, std::optional<WeakOrder>& last_tried) {
    const VertexFunction u = divide_by_degree(system.degrees(), g);
    double scale = 1.0;
    for (double v : u) scale = std::max(scale, std::abs(v));
    for (double tol = 1e-3; tol >= 1e-10; tol /= 10.0) {
        WeakOrder order = weak_order_of(u.raw(), tol * scale);
        if (last_tried && *last_tried == order) continue;
        last_tried = order;
        if (auto res = resolve_in_region(system, f, lambda, order)) return res;
    }
    return std::nullopt;
}

}  // namespace

double neville_at_zero(const std::vector<double>& xs, std::vector<double> ys) {
    const std::size_t k = xs.size();
    for (std::size_t m = 1; m < k; ++m)
        for (std::size_t i = 0; i + m < k; ++i) ys[i] = (xs[i] * ys[i + 1] - xs[i + m] * ys[i]) / (xs[i] - xs[i + m]);
    return ys.front();
}

ResolventResult<double> resolve_prox(const HypergraphSystem& system, const VertexFunction& f, double lambda,
                                     const ProxOptions& options) {
    check_inputs(system, f, lambda);
    if (!(options.tol > 0.0)) throw InvalidInput("tolerance must be positive");

    std::optional<WeakOrder> last_tried;
    if (options.polish) {
        if (options.hint && options.hint->size() == system.size()) {
            if (auto res = resolve_in_region(system, f, lambda, *options.hint)) return *res;
        }
        if (auto res = polish(system, f, lambda, f, last_tried)) return *res;
    }

    ProxDual dual(system, f, lambda);
    std::vector<double> z(dual.dimension(), 0.0);
    std::vector<double> y = z;
    double step_inv = 1.0;  // Lipschitz estimate of the dual gradient
    for (double d : system.degrees()) step_inv = std::max(step_inv, lambda * 2.0 / d);
    double momentum = 1.0;
    double best_gap = std::numeric_limits<double>::infinity();
    double phi_z = dual.value(z);
    VertexFunction g = f;
    double gap = dual.primal_value(g) - phi_z;
    constexpr std::size_t kPolishEvery = 100;

    std::size_t iter = 0;
    for (; iter < options.max_iterations; ++iter) {
        // Checked before the restart branch: in floating point restarts can fall
        // on every other iteration and would otherwise skip the checkpoint.
        if (options.polish && iter > 0 && iter % kPolishEvery == 0) {
            if (auto res = polish(system, f, lambda, g, last_tried)) return *res;
        }
        const std::vector<double> grad = dual.gradient(y);
        const double phi_y = dual.value(y);
        std::vector<double> next;
        // Backtracking on the quadratic lower model of the concave dual.
        while (true) {
            next = y;
            for (std::size_t k = 0; k < next.size(); ++k) next[k] += grad[k] / step_inv;
            dual.project(next);
            double lin = 0.0, sq = 0.0;
            for (std::size_t k = 0; k < next.size(); ++k) {
                const double dk = next[k] - y[k];
                lin += grad[k] * dk;
                sq += dk * dk;
            }
            if (dual.value(next) >= phi_y + lin - 0.5 * step_inv * sq - 1e-15 * std::abs(phi_y)) break;
            step_inv *= 2.0;
        }
        const double phi_next = dual.value(next);
        // Function-value restart keeps the accelerated sequence monotone.
        if (phi_next < phi_z) {
            momentum = 1.0;
            y = z;
            continue;
        }
        const double momentum_next = 0.5 * (1.0 + std::sqrt(1.0 + 4.0 * momentum * momentum));
        const double beta = (momentum - 1.0) / momentum_next;
        for (std::size_t k = 0; k < y.size(); ++k) y[k] = next[k] + beta * (next[k] - z[k]);
        z = std::move(next);
        phi_z = phi_next;
        momentum = momentum_next;

        g = dual.primal(z);
        gap = dual.primal_value(g) - phi_z;
        best_gap = std::min(best_gap, gap);
        const double gap_scale = std::max(1.0, std::abs(phi_z));
        if (gap <= options.tol * options.tol * gap_scale) break;
    }
    spdlog::debug("proximal resolvent: {} iterations, dual gap {:.3e}", iter, gap);

    if (options.polish) {
        last_tried.reset();
        if (auto res = polish(system, f, lambda, g, last_tried)) return *res;
        if (system.size() <= options.cap) {
            RegionExactOptions exact_options;
            exact_options.cap = options.cap;
            return resolve_region_exact<double>(system, f, lambda, exact_options);
        }
    }
    if (iter >= options.max_iterations && gap > options.tol * std::max(1.0, std::abs(phi_z)))
        throw SolverError("proximal resolvent: iteration cap reached with dual gap " + std::to_string(gap));

    ResolventResult<double> result;
    result.method = ResolventMethod::Proximal;
    result.g = g;
    result.residual = (1.0 / lambda) * (f - g);
    // |g - J f|^2 <= 2 lambda gap; faces are read with a matching tolerance.
    double face_tol = 1e-9;
    for (double d : system.degrees()) face_tol = std::max(face_tol, 4.0 * std::sqrt(2.0 * lambda * std::max(gap, 0.0) / d));
    result.optimality_gap = laplacian_member_distance<double>(system, g, result.residual, true, face_tol);
    return result;
}

std::vector<HeatSample> heat_trajectory(const HypergraphSystem& system, const VertexFunction& f,
                                        std::vector<double> times, double lambda, const ProxOptions& options) {
    if (!(lambda > 0.0)) throw InvalidInput("lambda must be positive");
    std::sort(times.begin(), times.end());
    std::vector<HeatSample> out;
    VertexFunction current = f;
    std::size_t done = 0;
    std::optional<WeakOrder> previous;
    ProxOptions step_options = options;
    for (double t : times) {
        if (t < 0.0) throw InvalidInput("heat time must be nonnegative");
        const auto steps = static_cast<std::size_t>(std::floor(t / lambda + 1e-9));
        for (; done < steps; ++done) {
            step_options.hint = previous ? &*previous : options.hint;
            auto res = resolve_prox(system, current, lambda, step_options);
            current = std::move(res.g);
            previous = std::move(res.region);
        }
        out.push_back({t, current});
    }
    return out;
}

VertexFunction heat_semigroup(const HypergraphSystem& system, const VertexFunction& f, double t, double lambda,
                              const ProxOptions& options) {
    if (!(t > 0.0)) throw InvalidInput("heat time must be positive");
    return heat_trajectory(system, f, {t}, lambda, options).front().f;
}

LimitEstimate canonical_via_limit(const HypergraphSystem& system, const VertexFunction& f,
                                  const std::vector<double>& lambdas) {
    if (lambdas.size() < 2) throw InvalidInput("need at least two lambda values");
    for (std::size_t i = 0; i < lambdas.size(); ++i) {
        if (!(lambdas[i] > 0.0)) throw InvalidInput("lambda values must be positive");
        if (i > 0 && !(lambdas[i] < lambdas[i - 1])) throw InvalidInput("lambda values must decrease");
    }
    const std::size_t n = system.size();
    const std::size_t k = lambdas.size();
    std::vector<VertexFunction> quotients;
    for (double lambda : lambdas) {
        auto res = resolve_prox(system, f, lambda);
        quotients.push_back((1.0 / lambda) * (res.g - f));
    }
    // Full extrapolant versus the one without the finest sample.
    LimitEstimate out;
    out.estimate = VertexFunction(n);
    VertexFunction previous(n);
    for (VertexIndex v = 0; v < n; ++v) {
        std::vector<double> values(k);
        for (std::size_t i = 0; i < k; ++i) values[i] = quotients[i][v];
        out.estimate[v] = neville_at_zero(lambdas, values);
        previous[v] = neville_at_zero(std::vector<double>(lambdas.begin(), lambdas.end() - 1),
                                      std::vector<double>(values.begin(), values.end() - 1));
    }
    out.spread = system.norm(out.estimate - previous);
    const auto image = canonical_laplacian<double>(system, f, true);
    out.deviation = system.norm(out.estimate + image.representative);
    out.converged = out.spread <= 1e-6 * std::max(1.0, system.norm(out.estimate));
    return out;
}

template RegionMatrix<double> region_matrix<double>(const HypergraphSystem&, const WeakOrder&, const double&);
template RegionMatrix<Rational> region_matrix<Rational>(const HypergraphSystem&, const WeakOrder&, const Rational&);
template std::optional<ResolventResult<double>> resolve_in_region<double>(const HypergraphSystem&,
                                                                          const VertexFunction&, const double&,
                                                                          const WeakOrder&);
template std::optional<ResolventResult<Rational>> resolve_in_region<Rational>(const HypergraphSystem&,
                                                                              const ExactVertexFunction&,
                                                                              const Rational&, const WeakOrder&);
template ResolventResult<double> resolve_region_exact<double>(const HypergraphSystem&, const VertexFunction&,
                                                              const double&, const RegionExactOptions&);
template ResolventResult<Rational> resolve_region_exact<Rational>(const HypergraphSystem&,
                                                                  const ExactVertexFunction&, const Rational&,
                                                                  const RegionExactOptions&);

}  // namespace hyper_ricci

#include "hyper_ricci/kantorovich.hpp"

#include "hyper_ricci/parallel.hpp"
#include "hyper_ricci/region.hpp"
#include "hyper_ricci/resolvent.hpp"
#include "hyper_ricci/simplex.hpp"

#include <spdlog/spdlog.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

namespace hyper_ricci {

bool LipschitzPolytope::contains(const HypergraphSystem& system, const VertexFunction& f, double tol) {
    if (f.size() != system.size()) return false;
    const VertexFunction phi = divide_by_degree(system.degrees(), f);
    const double diam = static_cast<double>(system.diameter());
    for (VertexIndex v = 0; v < system.size(); ++v) {
        if (phi[v] < -tol || phi[v] > diam + tol) return false;
        for (VertexIndex w : system.neighbors(v))
            if (phi[v] - phi[w] > 1.0 + tol) return false;
    }
    return true;
}

double LipschitzPolytope::lipschitz_constant(const HypergraphSystem& system, const VertexFunction& f) {
    const VertexFunction phi = divide_by_degree(system.degrees(), f);
    double best = 0.0;
    for (VertexIndex v = 0; v < system.size(); ++v)
        for (VertexIndex w = 0; w < system.size(); ++w)
            if (v != w) best = std::max(best, (phi[v] - phi[w]) / static_cast<double>(system.distance(v, w)));
    return best;
}

VertexFunction LipschitzPolytope::project_phi(const HypergraphSystem& system, const VertexFunction& phi) {
    const std::size_t n = system.size();
    const double diam = static_cast<double>(system.diameter());
    std::vector<std::pair<VertexIndex, VertexIndex>> pairs;
    for (VertexIndex v = 0; v < n; ++v)
        for (VertexIndex w : system.neighbors(v)) pairs.emplace_back(v, w);

    VertexFunction x = phi;
    VertexFunction box_increment(n);
    std::vector<double> pair_increment(pairs.size(), 0.0);  // increments are multiples of (e_v - e_w)
    for (std::size_t sweep = 0; sweep < 20000; ++sweep) {
        double change = 0.0;
        for (VertexIndex v = 0; v < n; ++v) {
            const double yv = x[v] + box_increment[v];
            const double nv = std::clamp(yv, 0.0, diam);
            box_increment[v] = yv - nv;
            change = std::max(change, std::abs(nv - x[v]));
            x[v] = nv;
        }
        for (std::size_t k = 0; k < pairs.size(); ++k) {
            const auto [v, w] = pairs[k];
            double yv = x[v] + pair_increment[k];
            double yw = x[w] - pair_increment[k];
            const double excess = std::max(0.0, (yv - yw - 1.0) / 2.0);
            const double nv = yv - excess, nw = yw + excess;
            pair_increment[k] = excess;
            change = std::max({change, std::abs(nv - x[v]), std::abs(nw - x[w])});
            x[v] = nv;
            x[w] = nw;
        }
        if (change < 1e-14) break;
    }
    return x;
}

template <class S>
std::optional<KDResult<S>> kd_region_lp(const HypergraphSystem& system, VertexIndex x, VertexIndex y, const S& lambda,
                                        const WeakOrder& order) {
    const std::size_t rx = order.rank(x), ry = order.rank(y);
    if (rx >= ry) return std::nullopt;
    const std::size_t n = system.size();
    const std::size_t l = order.block_count();
    const auto degrees = system.degrees_as<S>();
    const auto weights = system.weights_as<S>();
    const auto edges = region_edges(system, order);

    // Layout: gaps h_0..h_{l-2} (u_I - u_{I+1}), then u_low = u_plus - u_minus, then multipliers.
    const std::size_t u_plus = l - 1, u_minus = l;
    std::size_t nv = l + 1;
    std::vector<std::size_t> top_var(edges.size(), 0), bottom_var(edges.size(), 0);
    for (std::size_t k = 0; k < edges.size(); ++k) {
        if (edges[k].top.size() > 1) {
            top_var[k] = nv;
            nv += edges[k].top.size();
        }
        if (edges[k].bottom.size() > 1) {
            bottom_var[k] = nv;
            nv += edges[k].bottom.size();
        }
    }
    using Row = std::vector<S>;
    auto add_block_value = [&](Row& row, std::size_t block, const S& scale) {
        row[u_plus] += scale;
        row[u_minus] -= scale;
        for (std::size_t i = block; i + 1 < l; ++i) row[i] += scale;
    };
    auto add_coefficient = [&](Row& row, const RegionEdge& re, const S& scale) {
        for (std::size_t i = re.top_rank; i < re.bottom_rank; ++i) row[i] += scale;
    };

    // f_v as a linear form in the variables.
    std::vector<Row> f_expr(n, Row(nv, S(0)));
    for (VertexIndex v = 0; v < n; ++v) add_block_value(f_expr[v], order.rank(v), degrees[v]);
    for (std::size_t k = 0; k < edges.size(); ++k) {
        const RegionEdge& re = edges[k];
        const S lw = lambda * weights[re.edge];
        if (re.top.size() == 1) {
            add_coefficient(f_expr[re.top.front()], re, lw);
        } else {
            for (std::size_t i = 0; i < re.top.size(); ++i) f_expr[re.top[i]][top_var[k] + i] += lw;
        }
        if (re.bottom.size() == 1) {
            add_coefficient(f_expr[re.bottom.front()], re, -lw);
        } else {
            for (std::size_t i = 0; i < re.bottom.size(); ++i) f_expr[re.bottom[i]][bottom_var[k] + i] -= lw;
        }
    }

    LinearProgram<S> lp(nv);
    for (std::size_t i = rx; i < ry; ++i) lp.objective[i] = S(1);
    const S diam(static_cast<long>(system.diameter()));
    std::vector<Row> phi_expr(n);
    for (VertexIndex v = 0; v < n; ++v) {
        phi_expr[v] = f_expr[v];
        for (S& c : phi_expr[v]) c /= degrees[v];
        Row neg = phi_expr[v];
        for (S& c : neg) c = -c;
        lp.add_row(std::move(neg), RowSense::LessEqual, S(0));
        lp.add_row(phi_expr[v], RowSense::LessEqual, diam);
    }
    for (VertexIndex v = 0; v < n; ++v) {
        for (VertexIndex w : system.neighbors(v)) {
            Row row = phi_expr[v];
            for (std::size_t j = 0; j < nv; ++j) row[j] -= phi_expr[w][j];
            lp.add_row(std::move(row), RowSense::LessEqual, S(1));
        }
    }
    // Multipliers on a side sum to the Lovász coefficient; each equality as two
    // inequalities so that the origin stays feasible.
    for (std::size_t k = 0; k < edges.size(); ++k) {
        for (int side = 0; side < 2; ++side) {
            const auto& members = side == 0 ? edges[k].top : edges[k].bottom;
            if (members.size() <= 1) continue;
            const std::size_t base = side == 0 ? top_var[k] : bottom_var[k];
            Row row(nv, S(0));
            for (std::size_t i = 0; i < members.size(); ++i) row[base + i] = S(1);
            add_coefficient(row, edges[k], S(-1));
            Row neg = row;
            for (S& c : neg) c = -c;
            lp.add_row(std::move(row), RowSense::LessEqual, S(0));
            lp.add_row(std::move(neg), RowSense::LessEqual, S(0));
        }
    }

    auto sol = solve_lp(lp);
    if (sol.status != LpStatus::Optimal)
        throw SolverError("Kantorovich region LP is " +
                          std::string(sol.status == LpStatus::Unbounded ? "unbounded" : "infeasible") + " for " +
                          order.to_string());
    KDResult<S> out;
    out.value = sol.value;
    out.region = order;
    out.certified = true;
    out.regions_solved = 1;
    out.potential = BasicVertexFunction<S>(n);
    for (VertexIndex v = 0; v < n; ++v) {
        S acc(0);
        for (std::size_t j = 0; j < nv; ++j)
            if (f_expr[v][j] != S(0)) acc += f_expr[v][j] * sol.x[j];
        out.potential[v] = acc;
    }
    return out;
}

template <class S>
KDResult<S> kd_exact(const HypergraphSystem& system, VertexIndex x, VertexIndex y, const S& lambda,
                     const KDOptions& options) {
    const std::size_t n = system.size();
    if (x >= n || y >= n) throw InvalidInput("vertex index out of range");
    if (!(lambda > S(0))) throw InvalidInput("lambda must be positive");
    if (n > options.cap)
        throw InvalidInput("region enumeration cap is " + std::to_string(options.cap) + ", system has " +
                           std::to_string(n) + " vertices");
    KDResult<S> best;
    best.certified = true;
    best.potential = BasicVertexFunction<S>(n);
    if (x == y) return best;

    std::vector<WeakOrder> batch;
    std::vector<std::optional<KDResult<S>>> results;
    auto flush = [&] {
        results.assign(batch.size(), std::nullopt);
        parallel_for(batch.size(), options.threads,
                     [&](std::size_t i) { results[i] = kd_region_lp(system, x, y, lambda, batch[i]); });
        for (auto& r : results) {
            if (!r) continue;
            ++best.regions_solved;
            if (!best.region || r->value > best.value) {
                best.value = r->value;
                best.potential = std::move(r->potential);
                best.region = std::move(r->region);
            }
        }
        batch.clear();
    };
    for_each_weak_order(n, [&](const WeakOrder& order) {
        if (order.rank(x) >= order.rank(y)) return true;
        batch.push_back(order);
        if (batch.size() >= 256) flush();
        return true;
    });
    flush();
    return best;
}

double kd_objective(const HypergraphSystem& system, const VertexFunction& f, VertexIndex x, VertexIndex y,
                    double lambda) {
    const auto res = resolve_prox(system, f, lambda);
    return res.g[x] / system.degree(x) - res.g[y] / system.degree(y);
}

double kd_upper_bound(const HypergraphSystem& system, VertexIndex x, VertexIndex y, double lambda) {
    return 2.0 * lambda * std::sqrt(system.volume()) * system.max_inv_sqrt_degree() +
           static_cast<double>(system.distance(x, y));
}

namespace {

/// Calls visit on each weak order that refines `coarse` (every block replaced
/// by an ordered partition of itself), at most `limit` times.
void for_each_refinement(const WeakOrder& coarse, std::size_t limit,
                         const std::function<void(const WeakOrder&)>& visit) {
    const std::size_t n = coarse.size();
    std::vector<std::vector<WeakOrder>> options;
    for (const auto& block : coarse.blocks()) {
        std::vector<WeakOrder> local;
        if (block.size() <= 6) {
            local = all_weak_orders(block.size());
        } else {
            // Large tied blocks are kept whole; their refinements are too many to scan.
            std::vector<VertexIndex> whole(block.size());
            std::iota(whole.begin(), whole.end(), VertexIndex{0});
            local.emplace_back(block.size(), std::vector<std::vector<VertexIndex>>{whole});
        }
        options.push_back(std::move(local));
    }
    std::vector<std::size_t> pick(options.size(), 0);
    std::size_t produced = 0;
    while (produced < limit) {
        std::vector<std::vector<VertexIndex>> blocks;
        for (std::size_t b = 0; b < options.size(); ++b) {
            const auto& block = coarse.block(b);
            for (const auto& sub : options[b][pick[b]].blocks()) {
                std::vector<VertexIndex> mapped;
                for (VertexIndex i : sub) mapped.push_back(block[i]);
                blocks.push_back(std::move(mapped));
            }
        }
        visit(WeakOrder(n, std::move(blocks)));
        ++produced;
        std::size_t b = 0;
        while (b < pick.size() && ++pick[b] == options[b].size()) pick[b++] = 0;
        if (b == pick.size()) break;
    }
}

struct Evaluation {
    double value = 0.0;
    WeakOrder order;
    VertexFunction image;
};

Evaluation evaluate(const HypergraphSystem& system, const VertexFunction& f, VertexIndex x, VertexIndex y,
                    double lambda, const WeakOrder* hint) {
    ProxOptions opts;
    opts.hint = hint;
    auto res = resolve_prox(system, f, lambda, opts);
    Evaluation ev;
    ev.image = res.g;
    const VertexFunction u = divide_by_degree(system.degrees(), res.g);
    ev.value = u[x] - u[y];
    ev.order = res.region ? *res.region : weak_order_of(u.raw(), 1e-9);
    return ev;
}

VertexFunction ascent_direction(const HypergraphSystem& system, const WeakOrder& order, VertexIndex x, VertexIndex y,
                                double lambda) {
    const auto edges = region_edges(system, order);
    std::vector<double> rhs(order.block_count(), 0.0);
    rhs[order.rank(x)] += 1.0;
    rhs[order.rank(y)] -= 1.0;
    auto a = solve_linear(contracted_matrix(system, order, edges, lambda), rhs);
    VertexFunction grad(system.size());
    if (!a) return grad;
    for (VertexIndex v = 0; v < system.size(); ++v) grad[v] = system.degree(v) * (*a)[order.rank(v)];
    return grad;
}

VertexFunction random_vertex(const HypergraphSystem& system, std::mt19937_64& rng) {
    const std::size_t n = system.size();
    std::normal_distribution<double> normal;
    LinearProgram<double> lp(n);
    for (auto& c : lp.objective) c = normal(rng);
    const double diam = static_cast<double>(system.diameter());
    for (VertexIndex v = 0; v < n; ++v) {
        std::vector<double> row(n, 0.0);
        row[v] = 1.0;
        lp.add_row(row, RowSense::LessEqual, diam);
        for (VertexIndex w : system.neighbors(v)) {
            std::vector<double> pair(n, 0.0);
            pair[v] = 1.0;
            pair[w] = -1.0;
            lp.add_row(std::move(pair), RowSense::LessEqual, 1.0);
        }
    }
    auto sol = solve_lp(lp);
    VertexFunction phi(n);
    if (sol.status == LpStatus::Optimal)
        for (VertexIndex v = 0; v < n; ++v) phi[v] = sol.x[v];
    return phi;
}

}  // namespace

KDResult<double> kd_heuristic(const HypergraphSystem& system, VertexIndex x, VertexIndex y, double lambda,
                              const KDHeuristicOptions& options) {
    const std::size_t n = system.size();
    if (x >= n || y >= n) throw InvalidInput("vertex index out of range");
    if (!(lambda > 0.0)) throw InvalidInput("lambda must be positive");
    if (options.restarts < 1) throw InvalidInput("restarts must be at least 1");
    KDResult<double> best;
    best.potential = VertexFunction(n);
    best.certified = false;
    if (x == y) return best;

    std::mt19937_64 rng(options.seed);
    const double diam = static_cast<double>(system.diameter());
    std::vector<VertexFunction> starts;
    VertexFunction distance_start(n);
    for (VertexIndex v = 0; v < n; ++v) distance_start[v] = diam - static_cast<double>(system.distance(v, x));
    starts.push_back(distance_start);
    while (starts.size() < options.restarts) starts.push_back(random_vertex(system, rng));

    bool have_best = false;
    for (const VertexFunction& start : starts) {
        VertexFunction phi = start;
        VertexFunction f = multiply_by_degree(system.degrees(), phi);
        Evaluation current = evaluate(system, f, x, y, lambda, nullptr);
        double step = 0.5 * std::max(1.0, diam);
        for (std::size_t it = 0; it < options.ascent_iterations && step > 1e-7; ++it) {
            VertexFunction dir = ascent_direction(system, current.order, x, y, lambda);
            double scale = 0.0;
            for (double d : dir) scale = std::max(scale, std::abs(d));
            if (scale == 0.0) break;
            VertexFunction trial_phi = LipschitzPolytope::project_phi(system, phi + (step / scale) * dir);
            VertexFunction trial_f = multiply_by_degree(system.degrees(), trial_phi);
            Evaluation trial = evaluate(system, trial_f, x, y, lambda, &current.order);
            if (trial.value > current.value + 1e-13) {
                phi = std::move(trial_phi);
                f = std::move(trial_f);
                current = std::move(trial);
                step *= 1.5;
            } else {
                step *= 0.5;
            }
        }

        // LP local search: the optimum of one region's LP sits on faces shared with
        // the refinements of its tie pattern; move while one of them is better.
        KDResult<double> local;
        local.value = current.value;
        local.potential = f;
        local.region = current.order;
        if (auto lp = kd_region_lp<double>(system, x, y, lambda, current.order); lp && lp->value > local.value)
            local = std::move(*lp);
        for (std::size_t round = 0; round < options.local_rounds; ++round) {
            const Evaluation at = evaluate(system, local.potential, x, y, lambda, local.region ? &*local.region : nullptr);
            const WeakOrder ties =
                weak_order_of(divide_by_degree(system.degrees(), at.image).raw(), 1e-9 * std::max(1.0, diam));
            std::optional<KDResult<double>> improved;
            for_each_refinement(ties, 4096, [&](const WeakOrder& order) {
                auto lp = kd_region_lp<double>(system, x, y, lambda, order);
                if (lp && lp->value > (improved ? improved->value : local.value) + 1e-12) improved = std::move(lp);
            });
            if (!improved) break;
            local = std::move(*improved);
        }
        if (!have_best || local.value > best.value) {
            best.value = local.value;
            best.potential = local.potential;
            best.region = local.region;
            have_best = true;
        }
    }
    best.certified = false;
    best.regions_solved = 0;
    return best;
}

KDMatrixReport kd_metric_check(const HypergraphSystem& system, double lambda, double tol, const KDOptions& options) {
    const std::size_t n = system.size();
    KDMatrixReport report;
    report.matrix.assign(n, std::vector<double>(n, 0.0));
    for (VertexIndex a = 0; a < n; ++a) {
        for (VertexIndex b = 0; b < n; ++b) {
            if (a == b) continue;
            report.matrix[a][b] = n <= options.cap ? kd_exact<double>(system, a, b, lambda, options).value
                                                   : kd_heuristic(system, a, b, lambda).value;
        }
    }
    auto name = [&](VertexIndex v) { return system.vertex_id(v); };
    for (VertexIndex a = 0; a < n; ++a) {
        for (VertexIndex b = 0; b < n; ++b) {
            if (a == b) continue;
            const double kab = report.matrix[a][b];
            if (std::abs(kab - report.matrix[b][a]) > tol)
                report.violations.push_back("symmetry (" + name(a) + "," + name(b) + ")");
            if (!(kab > tol)) report.violations.push_back("positivity (" + name(a) + "," + name(b) + ")");
            if (kab > kd_upper_bound(system, a, b, lambda) + tol)
                report.violations.push_back("upper envelope (" + name(a) + "," + name(b) + ")");
            for (VertexIndex c = 0; c < n; ++c) {
                if (c == a || c == b) continue;
                if (report.matrix[a][c] > kab + report.matrix[b][c] + tol)
                    report.violations.push_back("triangle (" + name(a) + "," + name(b) + "," + name(c) + ")");
            }
        }
    }
    return report;
}

template std::optional<KDResult<double>> kd_region_lp<double>(const HypergraphSystem&, VertexIndex, VertexIndex,
                                                              const double&, const WeakOrder&);
template std::optional<KDResult<Rational>> kd_region_lp<Rational>(const HypergraphSystem&, VertexIndex, VertexIndex,
                                                                  const Rational&, const WeakOrder&);
template KDResult<double> kd_exact<double>(const HypergraphSystem&, VertexIndex, VertexIndex, const double&,
                                           const KDOptions&);
template KDResult<Rational> kd_exact<Rational>(const HypergraphSystem&, VertexIndex, VertexIndex, const Rational&,
                                               const KDOptions&);

}  // namespace hyper_ricci

#include "hyper_ricci/graph_oracle.hpp"
#include "hyper_ricci/laplacian.hpp"
#include "hyper_ricci/resolvent.hpp"
#include "test_support.hpp"

#include <doctest.h>

#include <numeric>

using namespace hyper_ricci;
using namespace hyper_ricci::testing;

namespace {

double total(const VertexFunction& f) { return std::accumulate(f.begin(), f.end(), 0.0); }

}  // namespace

TEST_CASE("fixed points") {
    const auto s = example_three_vertex();
    const auto pi = 4.0 * s.stationary();
    const auto r = resolve_prox(s, pi, 0.3);
    CHECK(s.norm(r.g - pi) < 1e-9);
    const auto z = resolve_region_exact<Rational>(s, ExactVertexFunction(3), Rational(1, 3));
    CHECK(z.g == ExactVertexFunction(3));
}

TEST_CASE("three-vertex system, f = 3 delta_x") {
    // Region x > y = z; solving the two stationarity equations by hand gives
    // D^{-1} J f = (1 - 2/(2r+3), 1/(2r+3), 1/(2r+3)) with r = 1/lambda.
    const auto s = example_three_vertex();
    for (long r : {1L, 4L, 10L, 80L}) {
        const Rational lambda(1, r);
        const ExactVertexFunction f{Rational(3), Rational(0), Rational(0)};
        const auto res = resolve_region_exact<Rational>(s, f, lambda);
        const Rational k(1, 2 * r + 3);
        CHECK(res.g == ExactVertexFunction{3 * (1 - 2 * k), 3 * k, 3 * k});
        CHECK(res.g[0] / 3 - res.g[1] / 3 == Rational(2 * r, 2 * r + 3));
        CHECK(res.optimality_gap == 0);
    }
}

TEST_CASE("three-vertex system, f = 3 (delta_x + delta_z)") {
    // Region x = z > y: D^{-1} J f = (1 + a, b, 1 + a), a = -1/(2r+3), b = 2/(2r+3).
    const auto s = example_three_vertex();
    for (long r : {2L, 10L, 33L}) {
        const ExactVertexFunction f{Rational(3), Rational(0), Rational(3)};
        const auto res = resolve_region_exact<Rational>(s, f, Rational(1, r));
        const Rational a(-1, 2 * r + 3), b(2, 2 * r + 3);
        CHECK(res.g == ExactVertexFunction{3 * (1 + a), 3 * b, 3 * (1 + a)});
    }
}

TEST_CASE("resolvent invariants on random systems") {
    std::mt19937_64 rng(23);
    for (int trial = 0; trial < 30; ++trial) {
        const bool directed = trial % 3 == 2;
        const std::size_t n = 3 + trial % 4;
        const auto s = random_system(rng, n, 2, directed);
        const double lambda = 0.05 * (1 + trial % 5);
        const auto f = random_function(rng, n, 2.0);
        const auto g = random_function(rng, n, 2.0);
        const auto jf = resolve_prox(s, f, lambda);
        const auto jg = resolve_prox(s, g, lambda);

        // Total mass is preserved since every element of 𝓛 sums to zero.
        CHECK(total(jf.g) == doctest::Approx(total(f)).epsilon(1e-9));
        // Nonexpansive in the weighted norm.
        CHECK(s.norm(jf.g - jg.g) <= s.norm(f - g) + 1e-9);
        // The residual certifies the optimality condition.
        CHECK(laplacian_member_check<double>(s, jf.g, jf.residual, 1e-7, true));
        // Energy decreases along the resolvent.
        CHECK(energy_q<double>(s, divide_by_degree(s.degrees(), jf.g)) <=
              energy_q<double>(s, divide_by_degree(s.degrees(), f)) + 1e-9);

        // Region enumeration and the first-order solver agree.
        const auto re = resolve_region_exact<double>(s, f, lambda);
        CHECK(s.norm(re.g - jf.g) <= 1e-8 * (1 + s.norm(f)));
    }
}

TEST_CASE("exact and float region solves agree") {
    std::mt19937_64 rng(31);
    for (int trial = 0; trial < 10; ++trial) {
        const auto s = random_system(rng, 4, 2);
        ExactVertexFunction fe(4);
        VertexFunction f(4);
        std::uniform_int_distribution<int> v(-8, 8);
        for (std::size_t i = 0; i < 4; ++i) {
            fe[i] = Rational(v(rng), 4);
            f[i] = fe[i].convert_to<double>();
        }
        const auto ex = resolve_region_exact<Rational>(s, fe, Rational(1, 8));
        const auto fl = resolve_region_exact<double>(s, f, 0.125);
        for (std::size_t i = 0; i < 4; ++i) CHECK(fl.g[i] == doctest::Approx(ex.g[i].convert_to<double>()).epsilon(1e-10));
    }
}

TEST_CASE("graph resolvent matches the linear solve") {
    std::mt19937_64 rng(41);
    for (const auto& s : {path_graph(5), cycle_graph(6), complete_graph(4), random_system(rng, 6, 4, false, true)}) {
        const auto f = random_function(rng, s.size(), 3.0);
        for (double lambda : {0.01, 0.1, 1.0}) {
            const auto nonlinear = resolve_prox(s, f, lambda).g;
            const auto linear = linear_resolvent(s, f, lambda);
            CHECK(s.norm(nonlinear - linear) <= 1e-8 * (1 + s.norm(f)));
        }
    }
}

TEST_CASE("heat flow on graphs approaches the matrix exponential") {
    const auto s = cycle_graph(5);
    std::mt19937_64 rng(43);
    const auto f = random_function(rng, 5, 2.0);
    const double t = 0.5;
    const auto exact = linear_heat(s, f, t);
    double previous = 1e300;
    for (double lambda : {0.05, 0.025, 0.0125}) {
        const double err = s.norm(heat_semigroup(s, f, t, lambda) - exact);
        // Implicit Euler: first order in lambda.
        CHECK(err <= 2.0 * lambda * s.norm(f));
        CHECK(err < previous);
        previous = err;
    }
}

TEST_CASE("heat trajectory keeps multiples of pi fixed") {
    const auto s = example_three_vertex();
    const auto pi = s.stationary();
    for (const auto& sample : heat_trajectory(s, pi, {0.1, 0.5, 1.0}, 0.05)) CHECK(s.norm(sample.f - pi) < 1e-9);
}

TEST_CASE("resolvent difference quotient recovers the canonical Laplacian") {
    const auto s = single_triangle_edge();
    const VertexFunction f{1.0, 0.0, 0.0};
    const auto est = canonical_via_limit(s, f, {0.04, 0.02, 0.01, 0.005, 0.0025});
    CHECK(est.converged);
    CHECK(est.deviation <= 1e-6);
    CHECK(est.estimate[1] == doctest::Approx(0.5).epsilon(1e-6));
}

TEST_CASE("neville extrapolation reproduces polynomials") {
    const std::vector<double> xs{0.4, 0.2, 0.1, 0.05};
    std::vector<double> ys;
    for (double x : xs) ys.push_back(2.0 - 3.0 * x + 0.5 * x * x * x);
    CHECK(neville_at_zero(xs, ys) == doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("difference quotient on random systems and on multiples of pi") {
    std::mt19937_64 rng(47);
    for (int trial = 0; trial < 5; ++trial) {
        const auto s = random_system(rng, 4, 2);
        const auto est = canonical_via_limit(s, random_function(rng, 4, 2.0), {0.04, 0.02, 0.01, 0.005, 0.0025});
        CHECK(est.deviation <= 1e-5);
    }
    const auto s = example_three_vertex();
    const auto pi = 2.5 * s.stationary();
    const auto est = canonical_via_limit(s, pi, {0.04, 0.02, 0.01, 0.005, 0.0025});
    CHECK(s.norm(est.estimate) <= 1e-9);
}

TEST_CASE("heat flow is non-expansive") {
    std::mt19937_64 rng(49);
    for (int trial = 0; trial < 10; ++trial) {
        const auto s = random_system(rng, 4, 2, trial % 3 == 2);
        const auto f = random_function(rng, 4, 2.0);
        const auto g = random_function(rng, 4, 2.0);
        const auto hf = heat_semigroup(s, f, 0.5, 0.05);
        const auto hg = heat_semigroup(s, g, 0.5, 0.05);
        CHECK(s.norm(hf - hg) <= s.norm(f - g) + 1e-8);
    }
}

TEST_CASE("region-exact resolvent fixes constant potentials") {
    const auto s = example_three_vertex();
    ExactVertexFunction f(3);
    for (VertexIndex v = 0; v < 3; ++v) f[v] = Rational(7, 2) * Rational(static_cast<long>(s.degree(v)));
    CHECK(resolve_region_exact<Rational>(s, f, Rational(1, 5)).g == f);
}

TEST_CASE("graph resolvent limits") {
    const auto s = cycle_graph(5);
    const auto pi = 3.0 * s.stationary();
    CHECK(s.norm(linear_resolvent(s, pi, 0.4) - pi) <= 1e-12);
    std::mt19937_64 rng(53);
    const auto f = random_function(rng, 5, 1.0);
    const auto lf = canonical_laplacian(s, f, true).representative;
    double previous = 1e300;
    for (double lambda : {1e-2, 1e-3, 1e-4}) {
        const auto quotient = (1.0 / lambda) * (linear_resolvent(s, f, lambda) - f);
        const double err = s.norm(quotient + lf);
        CHECK(err < previous);
        previous = err;
    }
    CHECK(previous <= 1e-3);
}

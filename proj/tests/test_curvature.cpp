#include "hyper_ricci/curvature.hpp"
#include "hyper_ricci/graph_oracle.hpp"
#include "hyper_ricci/io.hpp"
#include "test_support.hpp"

#include <doctest.h>

using namespace hyper_ricci;
using namespace hyper_ricci::testing;

TEST_CASE("three-vertex system has curvature 3/2") {
    const auto s = example_three_vertex();
    const auto fl = estimate_kappa(s, 0, 1);
    CHECK(fl.certified);
    CHECK(fl.kappa == doctest::Approx(1.5).epsilon(1e-6));
    CHECK(fl.kappa_lower <= fl.kappa);
    CHECK(fl.kappa <= fl.kappa_upper);

    CurvatureOptions exact;
    exact.mode = ArithmeticMode::Rational;
    const auto ex = estimate_kappa(s, 0, 1, exact);
    REQUIRE(ex.exact_kappa);
    CHECK(*ex.exact_kappa == Rational(3, 2));
    // Every sample sits on the closed form 2r / (2r + 3).
    for (const auto& sample : ex.samples)
        CHECK(sample.kd == doctest::Approx(2.0 / (2.0 + 3.0 * sample.lambda)).epsilon(1e-12));
}

TEST_CASE("single triangle hyperedge has curvature 3/2") {
    CurvatureOptions exact;
    exact.mode = ArithmeticMode::Rational;
    const auto r = estimate_kappa(single_triangle_edge(), 0, 1, exact);
    REQUIRE(r.exact_kappa);
    CHECK(*r.exact_kappa == Rational(3, 2));
}

TEST_CASE("graph curvature matches the lazy-walk transport curvature") {
    for (const auto& s : {path_graph(3), path_graph(4), cycle_graph(5), complete_graph(4), complete_graph(3)}) {
        for (VertexIndex x = 0; x < s.size(); ++x)
            for (VertexIndex y = x + 1; y < s.size(); ++y) {
                const auto r = estimate_kappa(s, x, y);
                const auto lly = lly_curvature(s, x, y);
                CHECK(r.certified);
                CHECK(r.kappa == doctest::Approx(lly.kappa).epsilon(1e-6));
            }
    }
}

TEST_CASE("global curvature is attained on adjacent pairs") {
    const auto s = path_graph(4);
    const auto g = global_curvature(s, {}, 3);
    CHECK(g.certified);
    CHECK(g.reduction_holds);
    CHECK(g.kappa == doctest::Approx(0.0).epsilon(1e-6));
    double lly_min = 1e300;
    for (VertexIndex v = 0; v + 1 < s.size(); ++v) lly_min = std::min(lly_min, lly_curvature(s, v, v + 1).kappa);
    CHECK(g.kappa == doctest::Approx(lly_min).epsilon(1e-6));
    for (const auto& r : g.sampled_nonadjacent) CHECK(r.kappa >= g.kappa - 1e-6);
}

TEST_CASE("upper bound C") {
    const auto tri = upper_bound_C(single_triangle_edge(), 0, 1, 16);
    CHECK(tri.value <= 1.5 + 1e-9);
    CHECK(tri.value == doctest::Approx(1.5).epsilon(1e-9));
    const auto k4 = complete_hypergraph(4);
    const auto c = upper_bound_C(k4, 0, 1, 64);
    CHECK(c.value <= 4.0 / 3.0 + 1e-9);
    CHECK(LipschitzPolytope::contains(k4, c.potential, 1e-9));
}

TEST_CASE("curvature stays between the lower envelope and C") {
    std::mt19937_64 rng(71);
    for (int trial = 0; trial < 6; ++trial) {
        const auto s = random_system(rng, 4, 2, trial % 3 == 2);
        const VertexIndex x = 0, y = 1 + trial % 3;
        const auto r = estimate_kappa(s, x, y);
        const auto c = upper_bound_C(s, x, y, 32, 7);
        CHECK(r.kappa >= r.lower_envelope - 1e-9);
        CHECK(r.kappa <= c.value + 1e-6);
    }
}

TEST_CASE("eigenvalue bound on graphs") {
    const auto k3 = complete_graph(3);
    const auto eig = graph_spectrum(k3);
    const double kappa = estimate_kappa(k3, 0, 1).kappa;
    const auto check = verify_eigen_bound(k3, eig[1].f, eig[1].mu, kappa);
    CHECK(check.holds);
    CHECK(eig[1].mu == doctest::Approx(1.5));
    // Tight on the triangle.
    CHECK(kappa == doctest::Approx(eig[1].mu).epsilon(1e-6));
    // Eigenpairs are scale invariant; wrong eigenvalues are rejected.
    CHECK(verify_eigen_bound(k3, 3.0 * eig[1].f, eig[1].mu, kappa).holds);
    CHECK_THROWS_AS(verify_eigen_bound(k3, eig[1].f, eig[1].mu + 0.25, kappa), InvalidInput);

    const auto c5 = cycle_graph(5);
    const auto ceig = graph_spectrum(c5);
    const auto g = global_curvature(c5, {}, 0);
    CHECK(verify_eigen_bound(c5, ceig[1].f, ceig[1].mu, g.kappa).holds);
}

TEST_CASE("gradient estimate along the heat flow") {
    const auto s = example_three_vertex();
    const double kappa = 1.5;
    const VertexFunction f{3.0, 0.0, 0.0};
    const auto rows = verify_gradient_estimate(s, f, {0.1, 0.5, 1.0}, 0.01, kappa);
    REQUIRE(rows.size() == 3);
    for (const auto& row : rows) {
        CHECK(row.holds);
        CHECK(row.lipschitz <= 1.0 + 1e-12);
    }
    // Lipschitz constants decrease along the flow.
    CHECK(rows[2].lipschitz <= rows[0].lipschitz + 1e-12);
}

TEST_CASE("diameter bound") {
    const auto k3 = complete_graph(3);
    const auto d = verify_diameter_bound(k3, 1.5);
    CHECK(d.applicable);
    CHECK(d.holds);
    CHECK(d.bound == doctest::Approx(4.0 / 3.0));
    const auto p = verify_diameter_bound(path_graph(4), 0.0);
    CHECK_FALSE(p.applicable);
    CHECK(p.holds);
    CHECK_FALSE(verify_diameter_bound(path_graph(4), 1.0).holds);
}

TEST_CASE("rational fit recovers a degree-one rational function") {
    std::vector<double> lambdas = default_lambda_schedule();
    std::vector<double> values;
    for (double l : lambdas) values.push_back(2.0 / (2.0 + 3.0 * l));
    const auto fit = fit_rational(lambdas, values, 1);
    REQUIRE(fit);
    CHECK(fit->max_residual <= 1e-12);
    CHECK(fit->value_at_zero() == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(fit->derivative_at_zero() == doctest::Approx(-1.5).epsilon(1e-9));
    CHECK_FALSE(fit_rational({0.1, 0.05}, {1.0, 1.0}, 1));

    std::vector<Rational> ql, qv;
    for (long k : {10L, 20L, 40L, 80L}) {
        ql.emplace_back(1, k);
        qv.push_back(Rational(2 * k, 2 * k + 3));
    }
    const auto ex = interpolate_rational(ql, qv, 1);
    REQUIRE(ex);
    CHECK(ex->value_at_zero() == 1);
    CHECK(ex->derivative_at_zero() == Rational(-3, 2));
    CHECK(ex->evaluate(ql[3]) == qv[3]);
}

TEST_CASE("default schedule") {
    const auto s = default_lambda_schedule();
    REQUIRE(s.size() == 13);
    CHECK(s.front() == 0.1);
    for (std::size_t k = 1; k < s.size(); ++k) CHECK(s[k] == s[k - 1] / 2);
}

TEST_CASE("invalid curvature inputs") {
    const auto s = example_three_vertex();
    CHECK_THROWS_AS(estimate_kappa(s, 0, 0), InvalidInput);
    CHECK_THROWS_AS(estimate_kappa(s, 0, 7), InvalidInput);
    CurvatureOptions bad;
    bad.lambdas = {0.1, -0.05};
    CHECK_THROWS_AS(estimate_kappa(s, 0, 1, bad), InvalidInput);
}

TEST_CASE("kappa_lambda of the three-vertex system") {
    const auto s = example_three_vertex();
    for (double lambda : {0.1, 0.02, 0.004})
        CHECK(kappa_lambda(s, 0, 1, lambda) == doctest::Approx(3.0 * lambda / (2.0 + 3.0 * lambda)).epsilon(1e-12));
}

TEST_CASE("complete hypergraph on three vertices has curvature 3/2") {
    CurvatureOptions exact;
    exact.mode = ArithmeticMode::Rational;
    const auto r = estimate_kappa(complete_hypergraph(3), 0, 1, exact);
    REQUIRE(r.exact_kappa);
    CHECK(*r.exact_kappa == Rational(3, 2));
}

TEST_CASE("global curvature of the three-vertex system and the three-vertex path") {
    const auto g = global_curvature(example_three_vertex(), {}, 0);
    CHECK(g.certified);
    CHECK(g.kappa == doctest::Approx(1.5).epsilon(1e-6));
    const auto p = path_graph(3);
    const auto gp = global_curvature(p, {}, 1);
    const double lly_min = std::min(lly_curvature(p, 0, 1).kappa, lly_curvature(p, 1, 2).kappa);
    CHECK(gp.kappa == doctest::Approx(lly_min).epsilon(1e-6));
}

TEST_CASE("gradient estimate holds trivially for multiples of pi") {
    const auto s = example_three_vertex();
    const auto rows = verify_gradient_estimate(s, 5.0 * s.stationary(), {0.1, 1.0}, 0.01, 1.5);
    for (const auto& row : rows) {
        CHECK(row.holds);
        CHECK(row.lipschitz == doctest::Approx(0.0).scale(1.0).epsilon(1e-12));
    }
}

TEST_CASE("diameter bound of the three-vertex system") {
    const auto d = verify_diameter_bound(example_three_vertex(), 1.5);
    CHECK(d.holds);
    CHECK(d.margin == doctest::Approx(4.0 / 3.0 - 1.0));
}

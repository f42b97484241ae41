#include "hyper_ricci/min_norm.hpp"
#include "hyper_ricci/polytope.hpp"
#include "test_support.hpp"

#include <doctest.h>

using namespace hyper_ricci;
using namespace hyper_ricci::testing;

namespace {

/// Independent oracle: max over the explicit generator list.
double brute_lovasz(const BasePolytope& p, const VertexFunction& v) {
    double best = -1e300;
    for (const auto& g : p.generators()) best = std::max(best, g.apply(v));
    return best;
}

}  // namespace

TEST_CASE("generators of a hyperedge and a hyperarc") {
    const Edge e = Edge::undirected({0, 1, 2});
    BasePolytope p(e);
    CHECK(p.generators().size() == 9);  // all ordered pairs including x == y
    const Edge a = Edge::directed({0}, {1, 2});
    BasePolytope q(a);
    CHECK(q.generators().size() == 3);  // two differences plus zero
    bool has_zero = false;
    for (const auto& g : q.generators()) has_zero = has_zero || g.is_zero();
    CHECK(has_zero);
}

TEST_CASE("lovasz value examples") {
    const Edge e = Edge::undirected({0, 1, 2});
    BasePolytope tri(e);
    CHECK(lovasz_value(tri, VertexFunction{1.0, 0.0, 0.0}) == 1.0);
    CHECK(lovasz_value(tri, VertexFunction{2.0, 2.0, 2.0}) == 0.0);
    const Edge a = Edge::directed({0}, {1});
    BasePolytope arc(a);
    CHECK(lovasz_value(arc, VertexFunction{-1.0, 0.0}) == 0.0);
    CHECK(lovasz_value(arc, VertexFunction{1.0, -0.5}) == 1.5);
}

TEST_CASE("argmax face examples") {
    const Edge e = Edge::undirected({0, 1, 2});
    BasePolytope tri(e);
    const auto f = argmax_face(tri, VertexFunction{1.0, 0.0, 0.0}, 0.0);
    CHECK(f.value == 1.0);
    CHECK(f.generators.size() == 2);
    CHECK(f.top == std::vector<VertexIndex>{0});
    CHECK(f.bottom == std::vector<VertexIndex>{1, 2});
    const auto c = argmax_face(tri, VertexFunction{3.0, 3.0, 3.0}, 0.0);
    CHECK(c.value == 0.0);
    CHECK(c.generators.size() == 9);
    const Edge a = Edge::directed({0}, {1, 2});
    BasePolytope arc(a);
    const auto d = argmax_face(arc, VertexFunction{2.0, 0.0, 0.0}, 0.0);
    CHECK(d.value == 2.0);
    CHECK(d.generators.size() == 2);
}

TEST_CASE("lovasz value matches the generator maximum and is translation invariant and homogeneous") {
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 200; ++trial) {
        const auto s = random_system(rng, 5, 3, true);
        for (const Edge& e : s.edges()) {
            BasePolytope p(e);
            const auto v = random_function(rng, 5);
            const double val = lovasz_value(p, v);
            CHECK(val == doctest::Approx(brute_lovasz(p, v)));
            VertexFunction shifted = v;
            for (auto& x : shifted) x += 1.75;
            CHECK(lovasz_value(p, shifted) == doctest::Approx(val));
            CHECK(lovasz_value(p, 2.5 * v) == doctest::Approx(2.5 * val));
            // Every generator has entries in {-1, 0, 1} summing to zero by construction.
            for (const auto& g : p.generators())
                if (!g.is_zero()) CHECK(g.plus != g.minus);
        }
    }
}

TEST_CASE("mirrored edge realizes -B_e") {
    std::mt19937_64 rng(8);
    const Edge arc = Edge::directed({0, 1}, {2});
    const Edge mirror = mirrored(arc);
    const Edge hyper = Edge::undirected({0, 1, 2});
    for (int i = 0; i < 50; ++i) {
        const auto v = random_function(rng, 3);
        CHECK(lovasz_value(mirror, v) == doctest::Approx(lovasz_value(arc, VertexFunction(-1.0 * v))));
        CHECK(lovasz_value(mirrored(hyper), v) == doctest::Approx(lovasz_value(hyper, VertexFunction(-1.0 * v))));
    }
}

TEST_CASE("min norm point examples") {
    const std::vector<double> unit{1.0, 1.0, 1.0};
    const VertexFunction zero(3);
    SUBCASE("single generator") {
        std::vector<FaceTerm<double>> terms{{1.0, {0}, {1}}};
        const auto r = min_norm_point<double>(terms, unit, zero);
        CHECK(r.point[0] == doctest::Approx(1.0));
        CHECK(r.point[1] == doctest::Approx(-1.0));
        CHECK(r.point[2] == doctest::Approx(0.0));
    }
    SUBCASE("triangle face gives (1, -1/2, -1/2)") {
        std::vector<FaceTerm<double>> terms{{1.0, {0}, {1, 2}}};
        const auto r = min_norm_point<double>(terms, unit, zero);
        CHECK(r.point[0] == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(r.point[1] == doctest::Approx(-0.5).epsilon(1e-12));
        CHECK(r.point[2] == doctest::Approx(-0.5).epsilon(1e-12));
        CHECK(r.mixtures[0].bottom_weights[0] == doctest::Approx(0.5));
    }
    SUBCASE("triangle face exactly") {
        const std::vector<Rational> d{Rational(1), Rational(1), Rational(1)};
        std::vector<FaceTerm<Rational>> terms{{Rational(1), {0}, {1, 2}}};
        const auto r = min_norm_point<Rational>(terms, d, ExactVertexFunction(3));
        CHECK(r.point == ExactVertexFunction{Rational(1), Rational(-1, 2), Rational(-1, 2)});
    }
    SUBCASE("opposite generators cancel") {
        std::vector<FaceTerm<double>> terms{{1.0, {0}, {1}}, {1.0, {1}, {0}}};
        const auto r = min_norm_point<double>(terms, unit, zero);
        CHECK(r.norm_sq == doctest::Approx(0.0).epsilon(1e-20));
    }
}

TEST_CASE("min norm point dominates random Minkowski-sum samples") {
    std::mt19937_64 rng(21);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int trial = 0; trial < 10; ++trial) {
        const std::size_t n = 5;
        std::vector<double> degrees(n);
        for (auto& d : degrees) d = 0.5 + 2.0 * u(rng);
        std::vector<FaceTerm<double>> terms;
        for (int t = 0; t < 4; ++t) {
            FaceTerm<double> term;
            term.scale = 0.25 + u(rng);
            for (VertexIndex v = 0; v < n; ++v) (u(rng) < 0.5 ? term.top : term.bottom).push_back(v);
            if (term.top.empty()) term.top.push_back(term.bottom.back()), term.bottom.pop_back();
            if (term.bottom.empty()) term.bottom.push_back(term.top.back()), term.top.pop_back();
            terms.push_back(term);
        }
        const auto r = min_norm_point<double>(terms, degrees, VertexFunction(n));
        for (int sample = 0; sample < 1000; ++sample) {
            VertexFunction p(n);
            for (const auto& term : terms) {
                std::vector<double> a(term.top.size()), b(term.bottom.size());
                double sa = 0, sb = 0;
                for (auto& x : a) sa += (x = u(rng));
                for (auto& x : b) sb += (x = u(rng));
                for (std::size_t i = 0; i < a.size(); ++i) p[term.top[i]] += term.scale * a[i] / sa;
                for (std::size_t i = 0; i < b.size(); ++i) p[term.bottom[i]] -= term.scale * b[i] / sb;
            }
            CHECK(r.norm_sq <= weighted_norm_sq<double>(degrees, p) + 1e-12);
        }
    }
}

#include "hyper_ricci/io.hpp"
#include "hyper_ricci/laplacian.hpp"
#include "test_support.hpp"

#include <doctest.h>

using namespace hyper_ricci;
using namespace hyper_ricci::testing;

TEST_CASE("energy Q") {
    const auto s = example_three_vertex();
    // Per-edge max - min of (1, 0, 0): xy 1, yz 0, zx 1, xyz 1.
    double oracle = 0.0;
    const VertexFunction g{1.0, 0.0, 0.0};
    for (std::size_t e = 0; e < s.edge_count(); ++e) {
        double hi = -1e300, lo = 1e300;
        for (VertexIndex v : s.edge(e).members()) {
            hi = std::max(hi, g[v]);
            lo = std::min(lo, g[v]);
        }
        oracle += 0.5 * s.weight(e) * (hi - lo) * (hi - lo);
    }
    CHECK(energy_q<double>(s, g) == oracle);
    CHECK(energy_q<double>(s, g) == 1.5);
    CHECK(energy_q<double>(s, VertexFunction{2.0, 2.0, 2.0}) == 0.0);
    CHECK(energy_q<double>(single_triangle_edge(), g) == 0.5);
}

TEST_CASE("canonical Laplacian of the single triangle edge") {
    const auto s = single_triangle_edge();
    const auto img = canonical_laplacian<Rational>(s, ExactVertexFunction{Rational(1), Rational(0), Rational(0)}, true);
    CHECK(img.is_canonical);
    CHECK(img.representative == ExactVertexFunction{Rational(1), Rational(-1, 2), Rational(-1, 2)});
    const auto fl = canonical_laplacian<double>(s, VertexFunction{1.0, 0.0, 0.0}, true);
    CHECK(fl.representative[1] == doctest::Approx(-0.5).epsilon(1e-12));
}

TEST_CASE("canonical Laplacian on the complete hypergraph") {
    for (std::size_t n = 3; n <= 6; ++n) {
        const auto s = complete_hypergraph(n);
        ExactVertexFunction f(n);
        f[0] = s.exact_degrees()[0];
        const auto img = canonical_laplacian<Rational>(s, f, true);
        CHECK(img.representative[0] == s.exact_degrees()[0]);
        CHECK(img.representative[1] == Rational(-static_cast<long>((1u << (n - 1)) - 1), static_cast<long>(n - 1)));
    }
}

TEST_CASE("canonical Laplacian vanishes on multiples of pi") {
    std::mt19937_64 rng(2);
    for (int trial = 0; trial < 10; ++trial) {
        const auto s = random_system(rng, 5, 3, trial % 2 == 0);
        const auto img = canonical_laplacian<double>(s, 2.5 * s.stationary(), true);
        CHECK(s.norm(img.representative) < 1e-12);
    }
}

TEST_CASE("membership check") {
    const auto s = example_three_vertex();
    std::mt19937_64 rng(4);
    const auto f = random_function(rng, 3);
    const auto img = canonical_laplacian<double>(s, f, true);
    CHECK(laplacian_member_check<double>(s, f, img.representative, 1e-8, true));
    VertexFunction off = img.representative;
    off[0] += 2.0 * s.volume();
    CHECK_FALSE(laplacian_member_check<double>(s, f, off, 0.5, true));
    CHECK(laplacian_member_check<double>(s, VertexFunction{1.0, 1.0, 1.0}, VertexFunction(3), 1e-12, false));
    // Exact mode decides membership exactly.
    const ExactVertexFunction fe{Rational(1), Rational(0), Rational(0)};
    const auto tri = single_triangle_edge();
    CHECK(laplacian_member_check<Rational>(tri, fe, ExactVertexFunction{Rational(1), Rational(-1), Rational(0)},
                                           Rational(0), true));
    CHECK_FALSE(laplacian_member_check<Rational>(tri, fe, ExactVertexFunction{Rational(1), Rational(-1, 3),
                                                                              Rational(-1, 3)},
                                                 Rational(0), true));
}

TEST_CASE("canonical Laplacian invariants on random systems") {
    std::mt19937_64 rng(17);
    for (int trial = 0; trial < 40; ++trial) {
        const bool directed = trial % 4 == 3;
        const std::size_t n = 3 + trial % 4;
        const auto s = random_system(rng, n, 3, directed);
        const auto f = random_function(rng, n, 3.0);
        const auto l0 = canonical_laplacian<double>(s, f, true).representative;
        const double scale = 1.0 + s.norm(l0);

        // Homogeneity (undirected only for negative c).
        for (double c : {-2.0, -1.0, 0.5, 3.0}) {
            if (directed && c < 0) continue;
            const auto lc = canonical_laplacian<double>(s, c * f, true).representative;
            CHECK(s.norm(lc - c * l0) <= 1e-8 * std::abs(c) * scale);
        }
        // Translation by multiples of pi.
        const auto lt = canonical_laplacian<double>(s, f + 1.7 * s.stationary(), true).representative;
        CHECK(s.norm(lt - l0) <= 1e-8 * scale);

        // Bound for weighted 1-Lipschitz input.
        const auto lip = random_lipschitz(rng, s);
        const auto ll = canonical_laplacian<double>(s, lip, true).representative;
        for (VertexIndex v = 0; v < n; ++v) CHECK(std::abs(ll[v]) <= s.degree(v) + 1e-9);
        CHECK(s.inner(ll, ll) <= s.volume() + 1e-9);

        // Monotonicity against a second random function.
        const auto g = random_function(rng, n, 3.0);
        const auto lg = canonical_laplacian<double>(s, g, true).representative;
        CHECK(s.inner(l0 - lg, f - g) >= -1e-9);

        // Convexity of Q along a segment.
        const double t = 0.3;
        const VertexFunction mix = t * f + (1.0 - t) * g;
        CHECK(energy_q<double>(s, mix) <= t * energy_q<double>(s, f) + (1.0 - t) * energy_q<double>(s, g) + 1e-12);
    }
}

TEST_CASE("canonical representative has the least norm among membership-certified samples") {
    std::mt19937_64 rng(6);
    const auto s = example_three_vertex();
    const VertexFunction f{3.0, 0.0, 0.0};
    const auto img = canonical_laplacian<double>(s, f, true);
    // Other members: vary the mixtures of each multi-vertex face.
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int i = 0; i < 200; ++i) {
        VertexFunction p(3);
        for (std::size_t e = 0; e < img.faces.size(); ++e) {
            const auto& face = img.faces[e];
            const double c = img.coefficients[e] * s.weight(e);
            if (c == 0.0) continue;
            std::vector<double> a(face.top.size()), b(face.bottom.size());
            double sa = 0, sb = 0;
            for (auto& x : a) sa += (x = u(rng));
            for (auto& x : b) sb += (x = u(rng));
            for (std::size_t k = 0; k < a.size(); ++k) p[face.top[k]] += c * a[k] / sa;
            for (std::size_t k = 0; k < b.size(); ++k) p[face.bottom[k]] -= c * b[k] / sb;
        }
        CHECK(laplacian_member_check<double>(s, f, p, 1e-9, true));
        CHECK(s.inner(img.representative, img.representative) <= s.inner(p, p) + 1e-12);
    }
}

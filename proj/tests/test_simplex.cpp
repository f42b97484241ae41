#include "hyper_ricci/simplex.hpp"
#include "test_support.hpp"

#include <doctest.h>

#include <array>
#include <cmath>
#include <random>

using namespace hyper_ricci;

namespace {

/// Brute-force oracle for two-variable programs: best feasible intersection of
/// two constraint lines (the axes included).
double brute_2d(const LinearProgram<double>& lp) {
    std::vector<std::array<double, 3>> lines;  // a x + b y = c
    for (std::size_t i = 0; i < lp.rows.size(); ++i) lines.push_back({lp.rows[i][0], lp.rows[i][1], lp.rhs[i]});
    lines.push_back({1, 0, 0});
    lines.push_back({0, 1, 0});
    auto feasible = [&](double x, double y) {
        if (x < -1e-9 || y < -1e-9) return false;
        for (std::size_t i = 0; i < lp.rows.size(); ++i) {
            const double lhs = lp.rows[i][0] * x + lp.rows[i][1] * y;
            if (lp.senses[i] == RowSense::LessEqual && lhs > lp.rhs[i] + 1e-9) return false;
            if (lp.senses[i] == RowSense::GreaterEqual && lhs < lp.rhs[i] - 1e-9) return false;
            if (lp.senses[i] == RowSense::Equal && std::abs(lhs - lp.rhs[i]) > 1e-9) return false;
        }
        return true;
    };
    double best = -1e300;
    for (std::size_t i = 0; i < lines.size(); ++i)
        for (std::size_t j = i + 1; j < lines.size(); ++j) {
            const auto& p = lines[i];
            const auto& q = lines[j];
            const double det = p[0] * q[1] - p[1] * q[0];
            if (std::abs(det) < 1e-12) continue;
            const double x = (p[2] * q[1] - p[1] * q[2]) / det;
            const double y = (p[0] * q[2] - p[2] * q[0]) / det;
            if (feasible(x, y)) best = std::max(best, lp.objective[0] * x + lp.objective[1] * y);
        }
    return best;
}

LinearProgram<Rational> to_exact(const LinearProgram<double>& lp) {
    LinearProgram<Rational> e(lp.num_vars);
    for (std::size_t j = 0; j < lp.num_vars; ++j) e.objective[j] = Rational(lp.objective[j]);
    for (std::size_t i = 0; i < lp.rows.size(); ++i) {
        std::vector<Rational> row;
        for (double a : lp.rows[i]) row.emplace_back(a);
        e.add_row(std::move(row), lp.senses[i], Rational(lp.rhs[i]));
    }
    return e;
}

}  // namespace

TEST_CASE("textbook program") {
    // max 3x + 5y, x <= 4, 2y <= 12, 3x + 2y <= 18: optimum 36 at (2, 6).
    LinearProgram<Rational> lp(2);
    lp.objective = {Rational(3), Rational(5)};
    lp.add_row({Rational(1), Rational(0)}, RowSense::LessEqual, Rational(4));
    lp.add_row({Rational(0), Rational(2)}, RowSense::LessEqual, Rational(12));
    lp.add_row({Rational(3), Rational(2)}, RowSense::LessEqual, Rational(18));
    const auto sol = solve_lp(lp);
    REQUIRE(sol.status == LpStatus::Optimal);
    CHECK(sol.value == Rational(36));
    CHECK(sol.x == std::vector<Rational>{Rational(2), Rational(6)});
}

TEST_CASE("phase one with equalities and >= rows") {
    // max x + y, x + y = 3, x >= 1, y <= 1.5, redundant copy of the equality.
    LinearProgram<double> lp(2);
    lp.objective = {1.0, 2.0};
    lp.add_row({1.0, 1.0}, RowSense::Equal, 3.0);
    lp.add_row({2.0, 2.0}, RowSense::Equal, 6.0);
    lp.add_row({1.0, 0.0}, RowSense::GreaterEqual, 1.0);
    lp.add_row({0.0, 1.0}, RowSense::LessEqual, 1.5);
    const auto sol = solve_lp(lp);
    REQUIRE(sol.status == LpStatus::Optimal);
    CHECK(sol.value == doctest::Approx(4.5));
    CHECK(sol.x[0] == doctest::Approx(1.5));
}

TEST_CASE("infeasible and unbounded programs") {
    LinearProgram<double> inf(1);
    inf.objective = {1.0};
    inf.add_row({1.0}, RowSense::LessEqual, 1.0);
    inf.add_row({1.0}, RowSense::GreaterEqual, 2.0);
    CHECK(solve_lp(inf).status == LpStatus::Infeasible);
    CHECK(solve_lp(to_exact(inf)).status == LpStatus::Infeasible);

    LinearProgram<double> unb(2);
    unb.objective = {1.0, 0.0};
    unb.add_row({1.0, -1.0}, RowSense::LessEqual, 1.0);
    CHECK(solve_lp(unb).status == LpStatus::Unbounded);
    CHECK(solve_lp(to_exact(unb)).status == LpStatus::Unbounded);
}

TEST_CASE("degenerate program terminates") {
    // Beale's cycling example under Dantzig pricing with textbook tie-breaking.
    LinearProgram<Rational> lp(4);
    lp.objective = {Rational(3, 4), Rational(-150), Rational(1, 50), Rational(-6)};
    lp.add_row({Rational(1, 4), Rational(-60), Rational(-1, 25), Rational(9)}, RowSense::LessEqual, Rational(0));
    lp.add_row({Rational(1, 2), Rational(-90), Rational(-1, 50), Rational(3)}, RowSense::LessEqual, Rational(0));
    lp.add_row({Rational(0), Rational(0), Rational(1), Rational(0)}, RowSense::LessEqual, Rational(1));
    const auto sol = solve_lp(lp);
    REQUIRE(sol.status == LpStatus::Optimal);
    CHECK(sol.value == Rational(1, 20));
}

TEST_CASE("two-variable programs against vertex enumeration") {
    std::mt19937_64 rng(11);
    std::uniform_int_distribution<int> coef(-4, 4);
    std::uniform_int_distribution<int> pos(1, 6);
    int optimal = 0;
    for (int trial = 0; trial < 300; ++trial) {
        LinearProgram<double> lp(2);
        lp.objective = {double(coef(rng)), double(coef(rng))};
        lp.add_row({1.0, 1.0}, RowSense::LessEqual, double(pos(rng) + 4));  // keeps it bounded
        const int extra = 1 + trial % 3;
        for (int k = 0; k < extra; ++k) {
            const auto sense = static_cast<RowSense>(trial * 7 % 3 == 0 ? k % 3 : 0);
            lp.add_row({double(coef(rng)), double(coef(rng))}, sense, double(pos(rng)));
        }
        const auto sol = solve_lp(lp);
        const double oracle = brute_2d(lp);
        if (oracle == -1e300) {
            CHECK(sol.status == LpStatus::Infeasible);
            continue;
        }
        REQUIRE(sol.status == LpStatus::Optimal);
        CHECK(sol.value == doctest::Approx(oracle).epsilon(1e-9));
        ++optimal;
    }
    CHECK(optimal > 150);
}

TEST_CASE("float and exact solves agree on ill-scaled degenerate programs") {
    // Mixed magnitudes 1 and 2^-12 with many rows tight at the origin.
    std::mt19937_64 rng(5);
    std::uniform_int_distribution<int> coef(-3, 3);
    std::bernoulli_distribution tiny(0.5);
    for (int trial = 0; trial < 100; ++trial) {
        const std::size_t n = 6;
        LinearProgram<double> lp(n);
        for (auto& c : lp.objective) c = coef(rng);
        for (std::size_t j = 0; j < n; ++j) {
            std::vector<double> row(n, 0.0);
            row[j] = 1.0;
            lp.add_row(row, RowSense::LessEqual, 2.0);
        }
        for (int k = 0; k < 8; ++k) {
            std::vector<double> row(n);
            for (auto& a : row) a = coef(rng) * (tiny(rng) ? std::ldexp(1.0, -12) : 1.0);
            lp.add_row(row, RowSense::LessEqual, k < 5 ? 0.0 : 1.0);
        }
        const auto fl = solve_lp(lp);
        const auto ex = solve_lp(to_exact(lp));
        REQUIRE(fl.status == ex.status);
        if (ex.status == LpStatus::Optimal) CHECK(fl.value == doctest::Approx(ex.value.convert_to<double>()).epsilon(1e-12));
    }
}

#include <doctest.h>

#include "../support/oracles.hpp"
#include "uqo/online_search.hpp"
#include "uqo/rng.hpp"

#include <cmath>
#include <numeric>

using uqo::Pip;
using namespace uqo::search;

namespace {

constexpr double kAlpha4 = 1.6035457395358360;   // root of a = ln(3/(a-1))
constexpr double kAlpha10 = 2.1010029972769727;  // root of a = ln(9/(a-1))

Pip random_pip(uqo::Rng& rng, double m, double M) {
    double lo = m + (M - m) * rng.uniform(), hi = m + (M - m) * rng.uniform();
    if (lo > hi) std::swap(lo, hi);
    return Pip(lo, hi, rng.uniform());
}

oracle::Bounds brute(const ProtectionFunction& g, const Pip& pip) {
    return oracle::search_bounds(g.grid.values, g.cumulative, pip.lower(), pip.upper(), pip.delta());
}

}  // namespace

TEST_CASE("worst-case ratio") {
    CHECK(worst_case_alpha(1, 4) == doctest::Approx(kAlpha4).epsilon(1e-10));
    CHECK(worst_case_alpha(1, 10) == doctest::Approx(kAlpha10).epsilon(1e-10));
    CHECK(worst_case_alpha(2, 8) == doctest::Approx(kAlpha4).epsilon(1e-10));
    CHECK(worst_case_alpha(1, 1.0001) < 1.01);
    CHECK(worst_case_alpha(1, 7) == doctest::Approx(oracle::threat_alpha(1, 7)).epsilon(1e-10));
    CHECK_THROWS_AS(worst_case_alpha(1, 1), std::invalid_argument);
}

TEST_CASE("worst-case protection function") {
    const auto g = worst_case_protection(1, 4, 0.01);
    for (std::size_t k = 0; k < g.grid.values.size(); ++k)
        if (g.grid.values[k] < kAlpha4) CHECK(g.cumulative[k] == 0);
    CHECK(g.cumulative.back() == doctest::Approx(1).epsilon(1e-8));
    const double mid = 1 + (kAlpha4 - 1) * std::exp(kAlpha4 / 2);
    CHECK(mid == doctest::Approx(2.345599204298036));
    // G is sampled on the grid, so the nearest grid value below `mid` is at most one step short of 0.5.
    CHECK(g.at(mid) <= 0.5 + 1e-12);
    CHECK(g.at(mid) >= 0.5 - std::log(1.01 * 1.5) / kAlpha4);
    CHECK(g.at(mid * 1.0000001) == doctest::Approx(g.at(mid)));
    const double o = oracle::search_bounds(g.grid.values, g.cumulative, 1, 4, 1).drcr;
    CHECK(std::abs(o - kAlpha4) <= 0.01 * 4);
}

TEST_CASE("grid construction") {
    const auto a = build_grid(1, 4, 2, 3, 1.0);
    CHECK(a.values == std::vector<double>{1, 2, 3, 4});
    CHECK(a.k_lower == 1);
    CHECK(a.k_upper == 2);
    const auto b = build_grid(1, 4, 1, 4, 1.0);
    CHECK(b.values == std::vector<double>{1, 2, 4});
    CHECK(b.k_lower == 0);
    CHECK(b.k_upper == 2);
    uqo::Rng rng(3);
    for (int i = 0; i < 50; ++i) {
        const Pip pip = random_pip(rng, 1, 4);
        const double eps = 0.005 + 0.1 * rng.uniform();
        const auto g = build_grid(1, 4, pip.lower(), pip.upper(), eps);
        CHECK(g.values.front() == 1);
        CHECK(g.values.back() == 4);
        CHECK(g.values[g.k_lower] == pip.lower());
        CHECK(g.values[g.k_upper] == pip.upper());
        for (std::size_t k = 1; k < g.values.size(); ++k) {
            CHECK(g.values[k] > g.values[k - 1]);
            CHECK(g.values[k] / g.values[k - 1] <= 1 + eps + 1e-12);
        }
    }
    CHECK_THROWS_AS(build_grid(1, 4, 0.5, 2, 0.1), std::invalid_argument);
    CHECK_THROWS_AS(build_grid(1, 4, 1, 2, 0), std::invalid_argument);
}

TEST_CASE("purely robust search is near the worst-case ratio") {
    const auto sol = solve_pfa(Pip(1, 4, 1), 1, 4, 0.005);
    CHECK(sol.drcr >= kAlpha4 - 1e-9);
    CHECK(sol.drcr <= kAlpha4 + 0.005 * 4 + 1e-6);
}

TEST_CASE("point predictions at the extremes") {
    const auto top = solve_pfa(Pip(4, 4, 0), 1, 4, 0.01);
    CHECK(top.drcr == doctest::Approx(1).epsilon(1e-9));
    const auto q = top.protection.masses();
    const double before = std::accumulate(q.begin(), q.end() - 1, 0.0);
    CHECK(before <= 1e-9);
    const auto bottom = solve_pfa(Pip(1, 1, 0), 1, 4, 0.01);
    CHECK(bottom.drcr == doctest::Approx(1).epsilon(1e-9));
}

TEST_CASE("solutions satisfy their constraints and certificates") {
    uqo::Rng rng(21);
    for (int i = 0; i < 15; ++i) {
        const Pip pip = random_pip(rng, 1, 4);
        const double eps = 0.02;
        const auto sol = solve_pfa(pip, 1, 4, eps);
        CHECK(pfa_constraint_violation(sol) <= 1e-8);
        CHECK(sol.eta_hat <= sol.gamma_hat + 1e-12);
        CHECK(sol.drcr == doctest::Approx(uqo::drcr_value(sol.eta_hat, sol.gamma_hat, pip.delta())).epsilon(1e-9));
        const auto q = sol.protection.masses();
        CHECK(std::accumulate(q.begin(), q.end(), 0.0) <= 1 + 1e-12);
        for (std::size_t k = 1; k < sol.protection.cumulative.size(); ++k)
            CHECK(sol.protection.cumulative[k] >= sol.protection.cumulative[k - 1]);
        const auto o = brute(sol.protection, pip);
        CHECK(o.drcr <= sol.drcr + 1e-9);
        CHECK(o.drcr >= sol.drcr - eps * 4 - 1e-6);
        CHECK(sol.lp_objective <= sol.drcr + 1e-9);
    }
}

TEST_CASE("objective is unimodal in the consistency parameter") {
    uqo::Rng rng(4);
    for (int i = 0; i < 5; ++i) {
        const Pip pip = random_pip(rng, 1, 4);
        const auto grid = build_grid(1, 4, pip.lower(), pip.upper(), 0.02);
        const auto sol = solve_pfa(pip, 1, 4, 0.02);
        for (int k = 0; k < 200; ++k) {
            const double a = 0.25 + 0.75 * k / 199.0;
            CHECK(pfa_objective(grid, pip.delta(), a) >= sol.lp_objective - 1e-6);
        }
    }
}

TEST_CASE("greedy and linear-program inner solvers agree") {
    uqo::Rng rng(9);
    for (int i = 0; i < 8; ++i) {
        const Pip pip = random_pip(rng, 1, 4);
        const auto grid = build_grid(1, 4, pip.lower(), pip.upper(), 0.05);
        for (double a : {0.3, 0.5, 0.7, 0.9}) {
            const double g = max_inverse_robustness(grid, a, InnerMethod::Greedy);
            const double l = max_inverse_robustness(grid, a, InnerMethod::Lp);
            if (g < 0) CHECK(l < 0);
            else CHECK(g == doctest::Approx(l).epsilon(1e-6));
        }
    }
}

TEST_CASE("running the protection function") {
    const auto sol = solve_pfa(Pip(2, 3, 0.2), 1, 4, 0.05);
    const auto& g = sol.protection;
    CHECK(pfa_run(g, uqo::SearchInstance({1, 1, 1}, 1, 4)).ratio == doctest::Approx(1));
    CHECK(pfa_run(g, uqo::SearchInstance({4}, 1, 4)).ratio == doctest::Approx(1));

    const auto inst = hard_instance(2.7, 1, 4, 12);
    double expect = 0, sold = 0;
    const auto q = g.masses();
    for (std::size_t k = 0; k < q.size(); ++k) {
        if (g.grid.values[k] > 2.7) break;
        expect += g.grid.values[k] * q[k];
        sold += q[k];
    }
    expect += (1 - sold) * 1;
    CHECK(oracle::ramp_ratio(g.grid.values, g.cumulative, 2.7) == doctest::Approx(2.7 / expect));
    CHECK(ramp_ratio(g, 2.7) == doctest::Approx(2.7 / expect).epsilon(1e-12));
    CHECK(pfa_run(g, inst).ratio <= ramp_ratio(g, 2.7) + 1e-8);

    const auto flat = hard_instance(1, 1, 4, 2);
    CHECK(flat.prices == std::vector<double>{1, 1, 1});
}

TEST_CASE("hard instance at the ceiling approaches the robustness certificate") {
    const auto sol = solve_pfa(Pip(2, 3, 0.5), 1, 4, 0.01);
    const double r = pfa_run(sol.protection, hard_instance(4, 1, 4, 4000)).ratio;
    CHECK(r <= sol.gamma_hat + 1e-9);
    CHECK(r >= ramp_ratio(sol.protection, 4) - 0.01 * 4);
}

TEST_CASE("random instances never beat the ramp bound") {
    uqo::Rng rng(17);
    for (int i = 0; i < 5; ++i) {
        const Pip pip = random_pip(rng, 1, 4);
        const auto sol = solve_pfa(pip, 1, 4, 0.02);
        for (int k = 0; k < 100; ++k) {
            std::vector<double> p;
            const int n = 1 + static_cast<int>(rng.uniform_int(0, 12));
            for (int j = 0; j < n; ++j) p.push_back(1 + 3 * rng.uniform());
            const uqo::SearchInstance inst(p, 1, 4);
            const double r = pfa_run(sol.protection, inst).ratio;
            CHECK(r <= ramp_ratio(sol.protection, inst.max_price()) + 1e-8);
            CHECK(r == doctest::Approx(inst.max_price() /
                                       oracle::protection_profit(sol.protection.grid.values,
                                                                 sol.protection.cumulative, p)));
        }
    }
}

TEST_CASE("sell-everything-at-the-floor schedule") {
    ProtectionFunction g;
    g.grid = build_grid(1, 4, 2, 3, 0.05);
    g.cumulative.assign(g.grid.values.size(), 1.0);
    const Pip pip(2, 3, 0.3);
    CHECK(drcr_oracle_search(g, pip) == doctest::Approx(0.7 * 3 + 0.3 * 4));
    const auto b = brute(g, pip);
    CHECK(b.drcr == doctest::Approx(0.7 * 3 + 0.3 * 4));
}

TEST_CASE("drcr is monotone in delta and in the interval width") {
    uqo::Rng rng(12);
    for (int i = 0; i < 5; ++i) {
        const Pip base = random_pip(rng, 1, 4);
        double prev = 0;
        for (int k = 0; k <= 5; ++k) {
            const double v = solve_pfa(Pip(base.lower(), base.upper(), 0.2 * k), 1, 4, 0.02).drcr;
            CHECK(v >= prev - 1e-6);
            prev = v;
        }
    }
}

#include "uqo/checks.hpp"

#include "uqo/online_search.hpp"
#include "uqo/rng.hpp"
#include "uqo/ski_rental.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

namespace uqo {

namespace {

class Suite {
public:
    explicit Suite(const std::function<void(const CheckResult&)>& cb) : cb_(cb) {}

    void record(std::string name, double worst, double tol, std::string detail = {}) {
        CheckResult r{std::move(name), worst <= tol, worst, tol, std::move(detail)};
        if (cb_) cb_(r);
        results_.push_back(std::move(r));
    }

    std::vector<CheckResult> take() { return std::move(results_); }

private:
    const std::function<void(const CheckResult&)>& cb_;
    std::vector<CheckResult> results_;
};

Pip random_int_pip(Rng& rng, std::int64_t top) {
    auto a = rng.uniform_int(1, top), b = rng.uniform_int(1, top);
    if (a > b) std::swap(a, b);
    return Pip(static_cast<double>(a), static_cast<double>(b), rng.uniform());
}

void ski_checks(Suite& suite, Rng& rng) {
    double worst = 0.0;
    for (int i = 1; i <= 40; ++i) {
        const double p = 0.2 * i;
        for (int j = 0; j <= 50; ++j) {
            const double d = 0.02 * j;
            const auto bound = ski::continuous_oracle(ski::dsr_buy_day(p, d, 2.0), Pip(p, p, d), 2.0);
            worst = std::max(worst, std::abs(bound.drcr - ski::dsr_drcr(p, d, 2.0)));
        }
    }
    suite.record("dsr closed form vs continuous oracle", worst, 1e-6, "P in 0.2..8, delta in 0..1, B=2");

    worst = 0.0;
    for (int i = 0; i < 200; ++i) {
        const double b = static_cast<double>(rng.uniform_int(1, 6));
        const Pip pip = random_int_pip(rng, 20);
        const auto bound = ski::continuous_oracle(ski::dsr_pip_buy_day(pip, b), pip, b);
        worst = std::max(worst, std::abs(bound.drcr - ski::dsr_pip_drcr(pip, b)));
    }
    suite.record("dsr-pip closed form vs continuous oracle", worst, 1e-6, "200 random integer intervals");

    worst = 0.0;
    double dominance = 0.0;
    for (int i = 0; i < 100; ++i) {
        const auto b = rng.uniform_int(1, 10);
        const Pip pip = random_int_pip(rng, 3 * b);
        const auto sol = ski::solve_rsr(pip, b);
        worst = std::max(worst, std::abs(ski::drcr_oracle(sol.policy, pip, b) - sol.drcr));
        dominance = std::max(dominance, sol.drcr - ski::dsr_pip_drcr(pip, static_cast<double>(b)));
    }
    suite.record("randomized program vs brute-force oracle", worst, 1e-6, "100 random (interval, B)");
    suite.record("randomized dominates deterministic", dominance, 1e-9, "drcr(RSR) - drcr(DSR-PIP)");

    worst = 0.0;
    for (int i = 0; i < 20; ++i) {
        const auto b = rng.uniform_int(1, 8);
        const Pip pip = random_int_pip(rng, 3 * b);
        const auto h = 3 * std::max<std::int64_t>(b, static_cast<std::int64_t>(pip.upper()));
        const auto full = lp::solve(ski::build_full_rsr_lp(pip, b, h));
        worst = std::max(worst, std::abs(full.objective_value - ski::solve_rsr(pip, b).drcr));
    }
    suite.record("reduced vs truncated full program", worst, 1e-6, "20 random tuples");

    worst = 0.0;
    for (int i = 0; i < 10; ++i) {
        const auto b = rng.uniform_int(1, 8);
        const Pip pip = random_int_pip(rng, 3 * b);
        const double best = ski::solve_rsr(pip, b).drcr;
        for (int k = 0; k < 100; ++k) {
            ski::PurchaseDistribution y;
            double total = 0.0;
            const auto days = 2 * b + static_cast<std::int64_t>(pip.upper());
            for (std::int64_t d = 1; d <= days; ++d) {
                const double w = -std::log(1.0 - rng.uniform());
                y.support.push_back(d);
                y.mass.push_back(w);
                total += w;
            }
            for (double& w : y.mass) w /= total;
            worst = std::max(worst, best - ski::drcr_oracle(y, pip, b));
        }
    }
    suite.record("no random distribution beats the program", worst, 1e-9, "10 intervals x 100 distributions");
}

void search_checks(Suite& suite, Rng& rng) {
    const double m = 1.0, M = 4.0, eps = 0.02;
    const double alpha = search::worst_case_alpha(m, M);
    const auto woa = search::worst_case_protection(m, M, eps);
    const double woa_drcr = search::drcr_oracle_search(woa, Pip(m, M, 1.0));
    suite.record("worst-case protection oracle near alpha*", std::abs(woa_drcr - alpha), eps * M / m,
                 "alpha* = " + std::to_string(alpha));

    double cert = 0.0, viol = 0.0, run_gap = 0.0;
    for (int i = 0; i < 10; ++i) {
        double lo = m + (M - m) * rng.uniform(), hi = m + (M - m) * rng.uniform();
        if (lo > hi) std::swap(lo, hi);
        const Pip pip(lo, hi, rng.uniform());
        const auto sol = search::solve_pfa(pip, m, M, eps);
        viol = std::max(viol, search::pfa_constraint_violation(sol));
        cert = std::max(cert, search::drcr_oracle_search(sol.protection, pip) - sol.drcr);
        for (int k = 0; k < 20; ++k) {
            std::vector<double> prices;
            const int n = 2 + static_cast<int>(rng.uniform_int(0, 10));
            for (int j = 0; j < n; ++j) prices.push_back(m + (M - m) * rng.uniform());
            const SearchInstance inst(prices, m, M);
            const double r = search::pfa_run(sol.protection, inst).ratio;
            run_gap = std::max(run_gap, r - search::ramp_ratio(sol.protection, inst.max_price()));
        }
    }
    suite.record("protection satisfies its discrete constraints", viol, 1e-8, "10 random intervals");
    suite.record("oracle confirms the certificate", cert, eps * M / m + 1e-6, "oracle - certified drcr");
    suite.record("random instances never beat the ramp bound", run_gap, 1e-8, "200 random price sequences");
}

}  // namespace

std::vector<CheckResult> run_oracle_checks(Problem problem, std::uint64_t seed,
                                           const std::function<void(const CheckResult&)>& on_result) {
    Suite suite(on_result);
    Rng rng(seed);
    if (problem == Problem::SkiRental) ski_checks(suite, rng);
    else search_checks(suite, rng);
    return suite.take();
}

}  // namespace uqo

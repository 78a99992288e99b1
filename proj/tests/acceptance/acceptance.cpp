// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any failure.

#include "../support/oracles.hpp"
#include "uqo/config.hpp"
#include "uqo/experiment.hpp"
#include "uqo/lp.hpp"
#include "uqo/online_learning.hpp"
#include "uqo/online_search.hpp"
#include "uqo/rng.hpp"
#include "uqo/ski_rental.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <string>
#include <vector>

using uqo::Pip;

namespace {

struct Outcome {
    bool passed = false;
    std::string detail;
};

std::string fmt(const char* f, double a, double b = 0, double c = 0, double d = 0) {
    char buf[256];
    std::snprintf(buf, sizeof buf, f, a, b, c, d);
    return buf;
}

Pip random_int_pip(uqo::Rng& rng, std::int64_t top) {
    auto a = rng.uniform_int(1, top), b = rng.uniform_int(1, top);
    if (a > b) std::swap(a, b);
    return Pip(static_cast<double>(a), static_cast<double>(b), rng.uniform());
}

Pip random_real_pip(uqo::Rng& rng, double m, double M) {
    double lo = m + (M - m) * rng.uniform(), hi = m + (M - m) * rng.uniform();
    if (lo > hi) std::swap(lo, hi);
    return Pip(lo, hi, rng.uniform());
}

oracle::Bounds discrete(const uqo::ski::PurchaseDistribution& y, const Pip& pip, std::int64_t b) {
    return oracle::discrete_ski(y.support, y.mass, static_cast<std::int64_t>(pip.lower()),
                                static_cast<std::int64_t>(pip.upper()), pip.delta(), b);
}

// Unreduced program over purchase days 1..H with one constraint per season length.
double full_program(const Pip& pip, std::int64_t b, std::int64_t horizon) {
    namespace lp = uqo::lp;
    const auto lo = static_cast<std::int64_t>(pip.lower()), hi = static_cast<std::int64_t>(pip.upper());
    const std::size_t width = 2 + static_cast<std::size_t>(horizon);
    lp::LinearProgram prog(width);
    prog.objective[0] = 1.0 - pip.delta();
    prog.objective[1] = pip.delta();
    for (std::int64_t n = 1; n <= horizon; ++n) {
        std::vector<double> row(width, 0.0);
        for (std::int64_t d = 1; d <= horizon; ++d)
            row[1 + d] = oracle::day_cost(d, n, b) / static_cast<double>(std::min(n, b));
        auto robust = row;
        robust[1] = -1.0;
        prog.add_row(robust, lp::Sense::LessEqual, 0.0);
        if (n >= lo && n <= hi) {
            row[0] = -1.0;
            prog.add_row(row, lp::Sense::LessEqual, 0.0);
        }
    }
    std::vector<double> total(width, 1.0);
    total[0] = total[1] = 0.0;
    prog.add_row(total, lp::Sense::Equal, 1.0);
    const auto sol = lp::solve(prog);
    if (sol.status != lp::Status::Optimal) throw uqo::SolverError("full program not optimal");
    return sol.objective_value;
}

// 1
Outcome dsr_vs_oracle() {
    double worst = 0;
    for (int i = 1; i <= 40; ++i) {
        const double p = 0.2 * i;
        for (int j = 0; j <= 50; ++j) {
            const double d = 0.02 * j;
            const auto o = oracle::continuous_ski(uqo::ski::dsr_buy_day(p, d, 2), p, p, d, 2);
            worst = std::max(worst, std::abs(uqo::ski::dsr_drcr(p, d, 2) - o.drcr));
        }
    }
    return {worst <= 1e-6, fmt("2040 grid points, max |closed form - oracle| = %.2e (tol 1e-6)", worst)};
}

// 2
Outcome purely_robust() {
    const double b2 = uqo::ski::solve_rsr(Pip(1, 6, 1), 2).drcr;
    const double b10 = uqo::ski::solve_rsr(Pip(1, 30, 1), 10).drcr;
    const double want10 = 1.0 / (1.0 - std::pow(0.9, 10));
    const double e2 = std::abs(b2 - 4.0 / 3.0), e10 = std::abs(b10 - want10);
    return {e2 <= 1e-6 && e10 <= 1e-6,
            fmt("B=2: %.9f (want 4/3), B=10: %.9f (want %.9f), tol 1e-6", b2, b10, want10)};
}

// 3
Outcome reduction_matches_full() {
    uqo::Rng rng(303);
    double worst = 0;
    const int tuples = 60;
    for (int i = 0; i < tuples; ++i) {
        const auto b = rng.uniform_int(1, 12);
        Pip pip = random_int_pip(rng, 3 * b);
        if (i % 10 == 0) pip = Pip(pip.lower(), pip.upper(), i % 20 == 0 ? 0.0 : 1.0);
        const auto h = 3 * std::max<std::int64_t>(b, static_cast<std::int64_t>(pip.upper()));
        worst = std::max(worst, std::abs(full_program(pip, b, h) - uqo::ski::solve_rsr(pip, b).drcr));
    }
    return {worst <= 1e-6, fmt("%.0f tuples (B<=12), max |reduced - full| = %.2e (tol 1e-6)", tuples, worst)};
}

std::vector<std::pair<Pip, std::int64_t>> twenty_pips() {
    uqo::Rng rng(404);
    std::vector<std::pair<Pip, std::int64_t>> out;
    for (int i = 0; i < 20; ++i) {
        const auto b = rng.uniform_int(1, 10);
        out.emplace_back(random_int_pip(rng, 3 * b), b);
    }
    return out;
}

// 4
Outcome no_distribution_beats_program() {
    uqo::Rng rng(405);
    double worst = -1e300;
    for (const auto& [pip, b] : twenty_pips()) {
        const double best = uqo::ski::solve_rsr(pip, b).drcr;
        const auto days = 2 * b + static_cast<std::int64_t>(pip.upper());
        for (int k = 0; k < 100; ++k) {
            uqo::ski::PurchaseDistribution y;
            double total = 0;
            for (std::int64_t d = 1; d <= days; ++d) {
                // Mix dense and sparse draws so point-like policies are covered too.
                const double w = k % 4 == 0 ? std::pow(rng.uniform(), 8.0) : -std::log(1.0 - rng.uniform());
                y.support.push_back(d);
                y.mass.push_back(w);
                total += w;
            }
            for (double& w : y.mass) w /= total;
            worst = std::max(worst, best - discrete(y, pip, b).drcr);
        }
    }
    return {worst <= 1e-9, fmt("2000 distributions, max (program - distribution) = %.2e (tol 1e-9)", worst)};
}

// 5
Outcome randomization_dominates() {
    double worst = -1e300;
    for (const auto& [pip, b] : twenty_pips())
        worst = std::max(worst, uqo::ski::solve_rsr(pip, b).drcr - uqo::ski::dsr_pip_drcr(pip, static_cast<double>(b)));
    return {worst <= 1e-9, fmt("20 intervals, max (randomized - deterministic) = %.2e (tol 1e-9)", worst)};
}

// 6
Outcome search_worst_case() {
    const double alpha = uqo::search::worst_case_alpha(1, 4);
    const double ref = oracle::threat_alpha(1, 4);
    const auto sol = uqo::search::solve_pfa(Pip(1, 4, 1), 1, 4, 0.005);
    const double hi = alpha + 0.005 * 4 + 1e-6;
    const bool ok = alpha >= 1.6035 && alpha <= 1.6036 && std::abs(alpha - ref) <= 1e-10 && sol.drcr >= alpha - 1e-12 &&
                    sol.drcr <= hi;
    return {ok, fmt("alpha* = %.10f, drcr(delta=1, eps=0.005) = %.6f in [%.6f, %.6f]", alpha, sol.drcr, alpha, hi)};
}

// 7
Outcome search_certificates() {
    uqo::Rng rng(707);
    const double eps = 0.01;
    double viol = 0, gap = -1e300;
    for (int i = 0; i < 20; ++i) {
        const Pip pip = random_real_pip(rng, 1, 4);
        const auto sol = uqo::search::solve_pfa(pip, 1, 4, eps);
        viol = std::max(viol, uqo::search::pfa_constraint_violation(sol));
        const auto& g = sol.protection;
        const auto o = oracle::search_bounds(g.grid.values, g.cumulative, pip.lower(), pip.upper(), pip.delta());
        gap = std::max(gap, o.drcr - sol.drcr);
    }
    const double tol = eps * 4 + 1e-6;
    return {viol <= 1e-8 && gap <= tol,
            fmt("20 intervals, max violation %.2e (tol 1e-8), max (oracle - certificate) %.2e (tol %.2e)", viol, gap,
                tol)};
}

// 8
Outcome monotonicity() {
    uqo::Rng rng(808);
    double ski_delta = 0, ski_tight = 0, s_delta = 0, s_tight = 0;
    for (int c = 0; c < 20; ++c) {
        const auto b = rng.uniform_int(1, 8);
        const Pip base = random_int_pip(rng, 3 * b);
        double prev = -1;
        for (int k = 0; k <= 10; ++k) {
            const double v = uqo::ski::solve_rsr(Pip(base.lower(), base.upper(), 0.1 * k), b).drcr;
            if (prev >= 0) ski_delta = std::max(ski_delta, prev - v);
            prev = v;
        }
        // Shrink the interval one day at a time toward a point inside it.
        double lo = base.lower(), hi = base.upper();
        const double mid = std::floor(0.5 * (lo + hi));
        prev = uqo::ski::solve_rsr(Pip(lo, hi, base.delta()), b).drcr;
        while (lo < mid || hi > mid) {
            if (lo < mid) lo += 1;
            if (hi > mid) hi -= 1;
            const double v = uqo::ski::solve_rsr(Pip(lo, hi, base.delta()), b).drcr;
            ski_tight = std::max(ski_tight, v - prev);
            prev = v;
        }
    }
    const double eps = 0.01;
    for (int c = 0; c < 20; ++c) {
        const Pip base = random_real_pip(rng, 1, 4);
        double prev = -1;
        for (int k = 0; k <= 5; ++k) {
            const double v = uqo::search::solve_pfa(Pip(base.lower(), base.upper(), 0.2 * k), 1, 4, eps).drcr;
            if (prev >= 0) s_delta = std::max(s_delta, prev - v);
            prev = v;
        }
        const double mid = 0.5 * (base.lower() + base.upper());
        prev = -1;
        for (int k = 0; k <= 5; ++k) {
            const double shrink = 1.0 - 0.2 * k;
            const Pip p(mid - (mid - base.lower()) * shrink, mid + (base.upper() - mid) * shrink, base.delta());
            const double v = uqo::search::solve_pfa(p, 1, 4, eps).drcr;
            if (prev >= 0) s_tight = std::max(s_tight, v - prev);
            prev = v;
        }
    }
    const double ski_tol = 1e-9, search_tol = 1e-6;
    const bool ok = ski_delta <= ski_tol && ski_tight <= ski_tol && s_delta <= search_tol && s_tight <= search_tol;
    return {ok, fmt("worst reversal: ski delta %.1e, ski tighten %.1e (tol 1e-9); search delta %.1e, search tighten "
                    "%.1e (tol 1e-6)",
                    ski_delta, ski_tight, s_delta, s_tight)};
}

// 9
Outcome eg_regret() {
    const std::size_t n = 8;
    const double L = 5;
    std::string detail;
    bool ok = true;
    for (std::int64_t T : {100, 1000}) {
        double worst_ratio = 0;
        for (std::uint64_t seed = 1; seed <= 5; ++seed) {
            uqo::Rng rng(seed * 7919);
            auto learner = uqo::learn::eg_init(n, T, L, static_cast<std::int64_t>(n));
            const std::size_t best = seed % n;
            std::vector<double> totals(n, 0.0);
            double incurred = 0;
            for (std::int64_t t = 0; t < T; ++t) {
                std::vector<double> loss(n);
                for (std::size_t i = 0; i < n; ++i) loss[i] = L * (0.3 + 0.7 * rng.uniform());
                loss[best] = L * 0.5 * rng.uniform();
                const auto p = learner.decide();
                for (std::size_t i = 0; i < n; ++i) {
                    incurred += p[i] * loss[i];
                    totals[i] += loss[i];
                }
                learner.update(loss);
            }
            const double regret = incurred - *std::min_element(totals.begin(), totals.end());
            const double bound = 2 * L * std::sqrt(static_cast<double>(T) * std::log(static_cast<double>(n)));
            worst_ratio = std::max(worst_ratio, regret / bound);
        }
        ok = ok && worst_ratio <= 1.0;
        detail += fmt("T=%.0f: max regret/bound = %.3f; ", static_cast<double>(T), worst_ratio);
    }
    return {ok, detail + "bound 2*5*sqrt(T ln 8)"};
}

uqo::ExperimentConfig appendix_config() {
    uqo::ExperimentConfig c;
    c.B = 2;
    c.T = 3000;
    c.runs = 10;
    c.seed = 1;
    c.horizon_max = 8;
    c.day_min = 1;
    c.day_max = 8;
    c.sigma_pattern = {{10, 0.0}, {10, 6.0}};
    c.confidence = 0.90;
    return c;
}

const uqo::ExperimentResult& appendix_run() {
    static const uqo::ExperimentResult result = uqo::run_experiment(appendix_config());
    return result;
}

// 10
Outcome figure_ordering() {
    const auto& r = appendix_run();
    std::map<std::string, double> at_end;
    for (const auto& row : r.summary)
        if (row.t == 3000) at_end[row.algorithm] = row.mean_cumulative_excess;
    const double old = at_end["OL-Dynamic"], rsr = at_end["RSR-PIP"], woa = at_end["WOA"], ols = at_end["OL-Static"],
                 ftp = at_end["FTP"];
    const bool ok = old < rsr && rsr < woa && ols >= old && ols <= woa && ols >= rsr - 0.01 && ftp > old;
    std::string d = fmt("t=3000: OL-Dynamic %.4f, RSR-PIP %.4f, WOA %.4f, ", old, rsr, woa);
    d += fmt("OL-Static %.4f, FTP %.4f", ols, ftp);
    return {ok, d};
}

// 11
Outcome sublinear_regret() {
    const auto& r = appendix_run();
    const std::int64_t T = 1500;
    std::map<std::int64_t, double> cum;
    double at_t = 0, at_2t = 0;
    for (const auto& rec : r.records) {
        if (rec.algorithm != "OL-Dynamic") continue;
        double& c = cum[rec.run];
        c += rec.expected_ratio - rec.benchmark;
        if (rec.t == T) at_t += c;
        if (rec.t == 2 * T) at_2t += c;
    }
    const double runs = static_cast<double>(cum.size());
    at_t /= runs;
    at_2t /= runs;
    return {runs == 10 && at_2t <= 1.85 * at_t,
            fmt("mean regret(1500) = %.2f, regret(3000) = %.2f, 1.85*regret(1500) = %.2f", at_t, at_2t, 1.85 * at_t)};
}

}  // namespace

int main() {
    struct Criterion {
        int id;
        const char* name;
        double limit_seconds;  // 0 = no runtime bound
        std::function<Outcome()> run;
    };
    const std::vector<Criterion> criteria{
        {1, "ski closed form vs continuous oracle", 5, dsr_vs_oracle},
        {2, "purely robust program values", 0, purely_robust},
        {3, "reduced program equals truncated full program", 30, reduction_matches_full},
        {4, "random distributions never beat the program", 0, no_distribution_beats_program},
        {5, "randomized policy dominates deterministic", 0, randomization_dominates},
        {6, "online search worst case", 10, search_worst_case},
        {7, "protection function certificates", 0, search_certificates},
        {8, "monotonicity in delta and interval width", 0, monotonicity},
        {9, "exponentiated gradient regret", 0, eg_regret},
        {10, "multi-instance experiment ordering", 180, figure_ordering},
        {11, "sublinear policy regret", 0, sublinear_regret},
    };
    int failed = 0;
    for (const auto& c : criteria) {
        const auto start = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = c.run();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (c.limit_seconds > 0 && secs >= c.limit_seconds) {
            o.passed = false;
            o.detail += fmt(" [runtime %.1f s exceeds %.0f s]", secs, c.limit_seconds);
        }
        std::printf("%s %2d  %-48s %s (%.2f s)\n", o.passed ? "PASS" : "FAIL", c.id, c.name, o.detail.c_str(), secs);
        std::fflush(stdout);
        failed += o.passed ? 0 : 1;
    }
    std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
    return failed == 0 ? 0 : 1;
}

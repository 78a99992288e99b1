#include "uqo/online_search.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace uqo::search {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kMassTol = 1e-12;

void check_bounds(double m, double M) {
    if (!(m > 0.0) || !std::isfinite(M)) throw std::invalid_argument("price floor must be positive");
    if (!(M > m)) throw std::invalid_argument("price ceiling must exceed the floor");
}

std::size_t nearest_index(const std::vector<double>& values, double target) {
    const auto it = std::lower_bound(values.begin(), values.end(), target);
    std::size_t k = static_cast<std::size_t>(it - values.begin());
    if (k == values.size()) return k - 1;
    if (k > 0 && target - values[k - 1] < values[k] - target) return k - 1;
    return k;
}

// Running profit S_k of the ramp through V_1..V_k followed by a crash to m.
std::vector<double> ramp_profits(const ProtectionFunction& g) {
    const auto& v = g.grid.values;
    const double m = g.grid.floor();
    std::vector<double> s(v.size());
    double prev = 0.0, acc = 0.0;
    for (std::size_t k = 0; k < v.size(); ++k) {
        acc += v[k] * (g.cumulative[k] - prev);
        prev = g.cumulative[k];
        s[k] = acc + (1.0 - prev) * m;
    }
    return s;
}

double inner_lp(const PriceGrid& grid, double a) {
    const auto& v = grid.values;
    const double m = grid.floor();
    const std::size_t n = v.size() + 1;  // (b, q_0..q_{K-1})
    lp::LinearProgram prog(n);
    prog.objective[0] = -1.0;
    prog.set_bounds(0, 0.0, a);
    for (std::size_t k = 0; k < v.size(); ++k) {
        std::vector<double> row(n, 0.0);
        for (std::size_t i = 0; i <= k; ++i) row[1 + i] = -(v[i] - m);
        if (grid.in_window(k)) {
            prog.add_row(std::move(row), lp::Sense::LessEqual, m - a * v[k]);
        } else {
            row[0] = v[k];
            prog.add_row(std::move(row), lp::Sense::LessEqual, m);
        }
    }
    std::vector<double> total(n, 1.0);
    total[0] = 0.0;
    prog.add_row(std::move(total), lp::Sense::LessEqual, 1.0);
    const auto sol = lp::solve(prog);
    if (sol.status == lp::Status::Infeasible) return -1.0;
    if (sol.status != lp::Status::Optimal)
        throw SolverError(std::string("search inner program reported ") + lp::to_string(sol.status));
    return sol.x[0];
}

}  // namespace

double ProtectionFunction::at(double price) const {
    const auto& v = grid.values;
    const auto it = std::upper_bound(v.begin(), v.end(), price);
    if (it == v.begin()) return 0.0;
    return cumulative[static_cast<std::size_t>(it - v.begin()) - 1];
}

std::vector<double> ProtectionFunction::masses() const {
    std::vector<double> q(cumulative.size());
    double prev = 0.0;
    for (std::size_t k = 0; k < q.size(); ++k) {
        q[k] = cumulative[k] - prev;
        prev = cumulative[k];
    }
    return q;
}

double worst_case_alpha(double m, double M) {
    check_bounds(m, M);
    auto h = [&](double alpha) { return alpha - std::log((M - m) / ((alpha - 1.0) * m)); };
    double lo = 1.0, hi = M / m;
    while (hi - lo > 1e-13) {
        const double mid = 0.5 * (lo + hi);
        if (mid == lo || mid == hi) break;
        (h(mid) < 0.0 ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

ProtectionFunction worst_case_protection(double m, double M, double grid_eps) {
    const double alpha = worst_case_alpha(m, M);
    ProtectionFunction g;
    g.grid = build_grid(m, M, m, M, grid_eps);
    for (double v : g.grid.values) {
        double val = 0.0;
        if (v >= alpha * m) val = std::log((v - m) / (alpha * m - m)) / alpha;
        g.cumulative.push_back(std::clamp(val, 0.0, 1.0));
    }
    g.cumulative.back() = 1.0;
    return g;
}

PriceGrid build_grid(double m, double M, double lower, double upper, double eps) {
    check_bounds(m, M);
    if (!(eps > 0.0)) throw std::invalid_argument("grid eps must be positive");
    if (!(m <= lower && lower <= upper && upper <= M))
        throw std::invalid_argument("interval must lie within [m, M]");

    auto k_max = static_cast<long>(std::floor(std::log(M / m) / std::log1p(eps)));
    while (m * std::pow(1.0 + eps, static_cast<double>(k_max + 1)) <= M) ++k_max;
    while (k_max > 0 && m * std::pow(1.0 + eps, static_cast<double>(k_max)) > M) --k_max;

    std::vector<double> raw;
    raw.reserve(static_cast<std::size_t>(k_max) + 4);
    for (long k = 0; k <= k_max; ++k) raw.push_back(m * std::pow(1.0 + eps, static_cast<double>(k)));
    raw.push_back(lower);
    raw.push_back(upper);
    raw.push_back(M);
    std::sort(raw.begin(), raw.end());

    PriceGrid grid;
    for (double v : raw) {
        if (!grid.values.empty() && v - grid.values.back() <= 1e-12 * v) continue;
        grid.values.push_back(v);
    }
    grid.values.front() = m;
    grid.values.back() = M;
    grid.k_lower = nearest_index(grid.values, lower);
    grid.k_upper = nearest_index(grid.values, upper);
    grid.values[grid.k_lower] = lower;
    grid.values[grid.k_upper] = upper;
    return grid;
}

std::vector<double> greedy_masses(const PriceGrid& grid, double a, double b) {
    const auto& v = grid.values;
    const double m = grid.floor();
    std::vector<double> q(v.size(), 0.0);
    double s = m;
    for (std::size_t k = 0; k < v.size(); ++k) {
        const double need = (grid.in_window(k) ? a : b) * v[k];
        if (need <= s) continue;
        if (v[k] <= m) return std::vector<double>(v.size(), kInf);
        q[k] = (need - s) / (v[k] - m);
        s = need;
    }
    return q;
}

double greedy_total_mass(const PriceGrid& grid, double a, double b) {
    double total = 0.0;
    for (double q : greedy_masses(grid, a, b)) total += q;
    return total;
}

double max_inverse_robustness(const PriceGrid& grid, double a, InnerMethod method) {
    if (method == InnerMethod::Lp) return inner_lp(grid, a);
    if (greedy_total_mass(grid, a, 0.0) > 1.0 + kMassTol) return -1.0;
    if (greedy_total_mass(grid, a, a) <= 1.0 + kMassTol) return a;
    double lo = 0.0, hi = a;
    for (int it = 0; it < 200 && hi - lo > 1e-15; ++it) {
        const double mid = 0.5 * (lo + hi);
        (greedy_total_mass(grid, a, mid) <= 1.0 + kMassTol ? lo : hi) = mid;
    }
    return lo;
}

double pfa_objective(const PriceGrid& grid, double delta, double a, InnerMethod method) {
    const double b = max_inverse_robustness(grid, a, method);
    if (b < 0.0) return kInf;
    if (delta == 0.0) return 1.0 / a;
    if (b == 0.0) return kInf;
    return (1.0 - delta) / a + delta / b;
}

SearchDrcrSolution solve_pfa(const Pip& pip, double m, double M, double eps, const PfaOptions& options) {
    const PriceGrid grid = build_grid(m, M, pip.lower(), pip.upper(), eps);
    const double delta = pip.delta();
    auto f = [&](double a) { return pfa_objective(grid, delta, a, options.inner); };

    auto golden = [&](double lo, double hi) {
        const double r = 0.5 * (std::sqrt(5.0) - 1.0);
        double x1 = hi - r * (hi - lo), x2 = lo + r * (hi - lo);
        double f1 = f(x1), f2 = f(x2);
        while (hi - lo > options.search_tol) {
            if (f1 <= f2) {
                hi = x2;
                x2 = x1;
                f2 = f1;
                x1 = hi - r * (hi - lo);
                f1 = f(x1);
            } else {
                lo = x1;
                x1 = x2;
                f1 = f2;
                x2 = lo + r * (hi - lo);
                f2 = f(x2);
            }
        }
        return f1 <= f2 ? x1 : x2;
    };

    const double a_lo = m / M, a_hi = 1.0;
    double best_a = golden(a_lo, a_hi);
    double best_f = f(best_a);
    for (double a : {a_lo, a_hi}) {
        const double fa = f(a);
        if (fa < best_f) best_a = a, best_f = fa;
    }
    // Uniform fallback scan; refine around any point that beats the search.
    const int n = std::max(options.fallback_points, 2);
    const double step = (a_hi - a_lo) / (n - 1);
    int beat = -1;
    for (int i = 0; i < n; ++i) {
        const double a = a_lo + step * i;
        const double fa = f(a);
        if (fa < best_f - options.search_tol) beat = i, best_a = a, best_f = fa;
    }
    if (beat >= 0) {
        const double a = golden(std::max(a_lo, best_a - step), std::min(a_hi, best_a + step));
        const double fa = f(a);
        if (fa < best_f) best_a = a, best_f = fa;
    }
    if (!std::isfinite(best_f)) throw SolverError("no feasible protection function found");

    const double b = max_inverse_robustness(grid, best_a, InnerMethod::Greedy);
    const auto q = greedy_masses(grid, best_a, std::max(b, 0.0));

    SearchDrcrSolution out;
    out.protection.grid = grid;
    double acc = 0.0;
    for (double qk : q) {
        acc = std::min(1.0, acc + qk);
        out.protection.cumulative.push_back(acc);
    }
    out.lp_eta = 1.0 / best_a;
    out.lp_gamma = b > 0.0 ? 1.0 / b : kInf;
    out.lp_objective = best_f;
    const auto cert = certified_bounds(out.protection, delta);
    out.eta_hat = cert.eta;
    out.gamma_hat = cert.gamma;
    out.drcr = cert.drcr;
    return out;
}

SearchRatioBounds certified_bounds(const ProtectionFunction& protection, double delta) {
    const auto& g = protection.grid;
    const auto& v = g.values;
    const auto s = ramp_profits(protection);
    SearchRatioBounds out;
    for (std::size_t k = 0; k < v.size(); ++k) {
        // Peaks in [V_k, V_{k+1}) earn S_k; the supremum sits at the right end.
        const double right = k + 1 < v.size() ? v[k + 1] : v[k];
        out.gamma = std::max(out.gamma, right / s[k]);
        if (g.in_window(k)) out.eta = std::max(out.eta, (k < g.k_upper ? right : v[k]) / s[k]);
    }
    out.drcr = drcr_value(out.eta, out.gamma, delta);
    return out;
}

double pfa_constraint_violation(const SearchDrcrSolution& solution) {
    const auto& g = solution.protection.grid;
    const auto s = ramp_profits(solution.protection);
    double worst = 0.0;
    double prev = 0.0;
    for (std::size_t k = 0; k < g.values.size(); ++k) {
        const double r = g.in_window(k) ? solution.eta_hat : solution.gamma_hat;
        worst = std::max(worst, g.values[k] - r * s[k]);
        worst = std::max(worst, prev - solution.protection.cumulative[k]);
        prev = solution.protection.cumulative[k];
    }
    worst = std::max(worst, prev - 1.0);
    worst = std::max(worst, 1.0 - solution.eta_hat);
    worst = std::max(worst, solution.eta_hat - solution.gamma_hat);
    return worst;
}

RatioSample pfa_run(const ProtectionFunction& protection, const SearchInstance& instance) {
    const auto& prices = instance.prices;
    double sold = 0.0, profit = 0.0;
    for (std::size_t n = 0; n + 1 < prices.size(); ++n) {
        const double target = protection.at(prices[n]);
        if (target > sold) {
            profit += (target - sold) * prices[n];
            sold = target;
        }
    }
    profit += (1.0 - sold) * prices.back();
    return profit_ratio(profit, instance.max_price());
}

SearchInstance hard_instance(double peak, double m, double M, int steps) {
    if (steps < 2) throw std::invalid_argument("hard instance needs at least two ramp steps");
    if (!(m <= peak && peak <= M)) throw std::invalid_argument("peak outside [m, M]");
    std::vector<double> prices;
    prices.reserve(static_cast<std::size_t>(steps) + 1);
    for (int i = 0; i < steps; ++i) prices.push_back(m * std::pow(peak / m, static_cast<double>(i) / (steps - 1)));
    prices.front() = m;
    prices.back() = peak;
    prices.push_back(m);
    return SearchInstance(std::move(prices), m, M);
}

double ramp_ratio(const ProtectionFunction& protection, double peak) {
    const auto& v = protection.grid.values;
    std::vector<double> prices;
    for (double x : v) {
        if (x > peak) break;
        prices.push_back(x);
    }
    prices.push_back(peak);
    prices.push_back(v.front());
    return pfa_run(protection, SearchInstance(std::move(prices), v.front(), v.back())).ratio;
}

SearchRatioBounds drcr_oracle_search_bounds(const ProtectionFunction& protection, const Pip& pip) {
    const auto& v = protection.grid.values;
    std::vector<double> peaks(v);
    const double m = v.front(), M = v.back();
    for (int i = 0; i < 400; ++i) peaks.push_back(m + (M - m) * i / 399.0);
    SearchRatioBounds out;
    for (double peak : peaks) {
        const double r = ramp_ratio(protection, peak);
        if (pip.contains(peak)) out.eta = std::max(out.eta, r);
        out.gamma = std::max(out.gamma, r);
    }
    out.drcr = drcr_value(out.eta, out.gamma, pip.delta());
    return out;
}

double drcr_oracle_search(const ProtectionFunction& protection, const Pip& pip) {
    return drcr_oracle_search_bounds(protection, pip).drcr;
}

}  // namespace uqo::search

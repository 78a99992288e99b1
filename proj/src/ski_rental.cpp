#include "uqo/ski_rental.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace uqo::ski {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void check_delta(double delta) {
    if (!(delta >= 0.0 && delta <= 1.0)) throw std::invalid_argument("delta must lie in [0, 1]");
}

void check_buy_cost(double buy_cost) {
    if (!(buy_cost > 0.0)) throw std::invalid_argument("buy cost must be positive");
}

// min{sqrt(num / (den (1 - delta))), 1} with the delta = 1 limit taken as 1.
double capped_sqrt_ratio(double delta, double num_scale) {
    if (delta >= 1.0) return 1.0;
    return std::min(std::sqrt(num_scale * delta / (1.0 - delta)), 1.0);
}

void check_integer_pip(const Pip& pip) {
    if (!has_integer_bounds(pip)) throw std::invalid_argument("pip bounds must be integers");
    if (pip.lower() < 1.0) throw std::invalid_argument("pip lower bound must be at least 1");
}

lp::LinearProgram build_program(const Pip& pip, std::int64_t B, const std::vector<std::int64_t>& support,
                                const std::vector<std::int64_t>& constraint_days) {
    const std::size_t width = 2 + support.size();
    lp::LinearProgram prog(width);
    prog.objective[0] = 1.0 - pip.delta();
    prog.objective[1] = pip.delta();
    prog.set_bounds(0, 1.0, kInf);

    const auto ell = static_cast<std::int64_t>(pip.lower());
    const auto u = static_cast<std::int64_t>(pip.upper());
    for (std::int64_t n : constraint_days) {
        // Σ_{t≤N}(B+t−1)y(t) + N(1 − Σ_{t≤N}y(t)) ≤ r_N·min{N,B}
        std::vector<double> row(width, 0.0);
        for (std::size_t i = 0; i < support.size(); ++i) {
            const std::int64_t t = support[i];
            if (t > n) break;
            row[2 + i] = static_cast<double>(B + t - 1 - n);
        }
        const bool conforming = ell <= n && n <= u;
        row[conforming ? 0 : 1] = -static_cast<double>(std::min(n, B));
        prog.add_row(std::move(row), lp::Sense::LessEqual, -static_cast<double>(n));
    }

    std::vector<double> total(width, 0.0);
    for (std::size_t i = 0; i < support.size(); ++i) total[2 + i] = 1.0;
    prog.add_row(std::move(total), lp::Sense::Equal, 1.0);

    std::vector<double> order(width, 0.0);
    order[0] = 1.0;
    order[1] = -1.0;
    prog.add_row(std::move(order), lp::Sense::LessEqual, 0.0);
    return prog;
}

}  // namespace

void PurchaseDistribution::validate() const {
    if (support.empty() || support.size() != mass.size())
        throw std::invalid_argument("purchase distribution support/mass mismatch");
    double total = 0.0;
    for (std::size_t i = 0; i < support.size(); ++i) {
        if (support[i] < 1) throw std::invalid_argument("purchase day must be positive");
        if (i > 0 && support[i] <= support[i - 1])
            throw std::invalid_argument("purchase days must be strictly increasing");
        if (!(mass[i] >= 0.0)) throw std::invalid_argument("purchase mass must be nonnegative");
        total += mass[i];
    }
    if (std::abs(total - 1.0) > 1e-9) throw std::invalid_argument("purchase masses must sum to 1");
}

std::int64_t PurchaseDistribution::sample(double u) const {
    double acc = 0.0;
    for (std::size_t i = 0; i < support.size(); ++i) {
        acc += mass[i];
        if (u < acc) return support[i];
    }
    return support.back();
}

PurchaseDistribution point_mass(std::int64_t day) {
    if (day < 1) throw std::invalid_argument("purchase day must be positive");
    return {{day}, {1.0}};
}

double chi(double delta) {
    check_delta(delta);
    if (delta <= 0.5) return 1.0 + 2.0 * std::sqrt(delta * (1.0 - delta));
    return 2.0;
}

double meta_lambda(double delta) {
    check_delta(delta);
    return capped_sqrt_ratio(delta, 1.0);
}

double clipped_lambda(double delta) { return std::clamp(meta_lambda(delta), kLambdaFloor, 1.0); }

double la_purohit_buy_day(double prediction, double lambda, double buy_cost) {
    if (!(lambda > 0.0 && lambda <= 1.0)) throw std::invalid_argument("lambda must lie in (0, 1]");
    return prediction < buy_cost ? buy_cost / lambda : buy_cost * lambda;
}

double zeta(double delta, double lower, double buy_cost) {
    check_delta(delta);
    check_buy_cost(buy_cost);
    if (!(lower > 0.0)) throw std::invalid_argument("zeta needs a positive lower bound");
    const double r = buy_cost / lower;
    if (delta < lower / (lower + buy_cost))
        return delta + (1.0 - delta) * r + 2.0 * std::sqrt(delta * (1.0 - delta) * r);
    return 1.0 + r;
}

double dsr_buy_day(double prediction, double delta, double buy_cost) {
    check_delta(delta);
    check_buy_cost(buy_cost);
    if (!(prediction > 0.0)) throw std::invalid_argument("prediction must be positive");
    if (prediction < buy_cost) return buy_cost;
    const double early = buy_cost * meta_lambda(delta);
    if (prediction > kGoldenRatio * buy_cost) return early;
    return chi(delta) <= delta + prediction / buy_cost ? early : prediction;
}

double dsr_drcr(double prediction, double delta, double buy_cost) {
    check_delta(delta);
    check_buy_cost(buy_cost);
    if (!(prediction > 0.0)) throw std::invalid_argument("prediction must be positive");
    if (prediction < buy_cost) return 1.0 + delta;
    if (prediction <= kGoldenRatio * buy_cost) return std::min(chi(delta), delta + prediction / buy_cost);
    return chi(delta);
}

double dsr_pip_buy_day(const Pip& pip, double buy_cost) {
    check_buy_cost(buy_cost);
    if (!(pip.lower() > 0.0)) throw std::invalid_argument("pip lower bound must be positive");
    const double ell = pip.lower(), u = pip.upper(), delta = pip.delta();
    if (u < buy_cost) return buy_cost;
    if (buy_cost < ell)
        return chi(delta) <= delta + u / buy_cost ? buy_cost * meta_lambda(delta) : u;
    const double z = zeta(delta, ell, buy_cost);
    if (z >= 2.0 && delta + u / buy_cost >= 2.0) return buy_cost;
    if (z <= delta + u / buy_cost) return ell * capped_sqrt_ratio(delta, buy_cost / ell);
    return u;
}

double dsr_pip_drcr(const Pip& pip, double buy_cost) {
    check_buy_cost(buy_cost);
    if (!(pip.lower() > 0.0)) throw std::invalid_argument("pip lower bound must be positive");
    const double ell = pip.lower(), u = pip.upper(), delta = pip.delta();
    if (u < buy_cost) return 1.0 + delta;
    if (buy_cost < ell) return std::min(chi(delta), delta + u / buy_cost);
    return std::min({zeta(delta, ell, buy_cost), delta + u / buy_cost, 2.0});
}

double continuous_ratio(double buy_day, double horizon, double buy_cost) {
    const double opt = std::min(horizon, buy_cost);
    return horizon <= buy_day ? horizon / opt : (buy_day + buy_cost) / opt;
}

RatioBounds continuous_oracle(double buy_day, const Pip& pip, double buy_cost, int grid_points) {
    check_buy_cost(buy_cost);
    if (!(pip.upper() > 0.0)) throw std::invalid_argument("pip must reach positive horizons");
    if (grid_points < 1) throw std::invalid_argument("grid_points must be positive");
    const double top = std::max({2.0 * buy_cost, 2.0 * pip.upper(), 2.0 * buy_day, 1.0});
    const double eps = 1e-9 * std::max(1.0, buy_day);

    std::vector<double> horizons;
    horizons.reserve(grid_points + 8);
    for (int i = 1; i <= grid_points; ++i) horizons.push_back(top * i / grid_points);
    for (double v : {buy_day, buy_day + eps, buy_day - eps, buy_cost, pip.lower(), pip.upper()})
        if (v > 0.0) horizons.push_back(v);

    RatioBounds out;
    out.eta = -kInf;
    out.gamma = buy_day > 0.0 ? 1.0 : kInf;  // Y = 0 pays B for arbitrarily short seasons
    for (double n : horizons) {
        const double r = continuous_ratio(buy_day, n, buy_cost);
        if (pip.contains(n)) out.eta = std::max(out.eta, r);
        out.gamma = std::max(out.gamma, r);
    }
    if (out.eta == -kInf) throw std::invalid_argument("no positive horizon inside the interval");
    out.drcr = drcr_value(out.eta, out.gamma, pip.delta());
    return out;
}

std::vector<std::int64_t> rsr_support(const Pip& pip, std::int64_t buy_cost) {
    check_integer_pip(pip);
    if (buy_cost < 1) throw std::invalid_argument("buy cost must be at least 1");
    const auto u = static_cast<std::int64_t>(pip.upper());
    std::vector<std::int64_t> days(static_cast<std::size_t>(buy_cost));
    std::iota(days.begin(), days.end(), std::int64_t{1});
    if (u >= buy_cost) days.push_back(u + 1);
    return days;
}

lp::LinearProgram build_rsr_lp(const Pip& pip, std::int64_t buy_cost) {
    const auto support = rsr_support(pip, buy_cost);
    const auto u = static_cast<std::int64_t>(pip.upper());
    std::vector<std::int64_t> constraints;
    if (u < buy_cost) {
        constraints = support;
    } else {
        for (std::int64_t n = 1; n < buy_cost; ++n) constraints.push_back(n);
        constraints.push_back(u);
        constraints.push_back(u + 1);
    }
    return build_program(pip, buy_cost, support, constraints);
}

lp::LinearProgram build_full_rsr_lp(const Pip& pip, std::int64_t buy_cost, std::int64_t horizon) {
    check_integer_pip(pip);
    if (buy_cost < 1) throw std::invalid_argument("buy cost must be at least 1");
    if (horizon < buy_cost) throw std::invalid_argument("horizon must cover the buy cost");
    std::vector<std::int64_t> days(static_cast<std::size_t>(horizon));
    std::iota(days.begin(), days.end(), std::int64_t{1});
    return build_program(pip, buy_cost, days, days);
}

DrcrSolution solve_rsr(const Pip& pip, std::int64_t buy_cost) {
    const auto support = rsr_support(pip, buy_cost);
    const auto prog = build_rsr_lp(pip, buy_cost);
    const auto sol = lp::solve(prog);
    if (sol.status != lp::Status::Optimal)
        throw SolverError(std::string("ski-rental program reported ") + lp::to_string(sol.status));

    DrcrSolution out;
    out.eta = sol.x[0];
    out.gamma = sol.x[1];
    out.drcr = sol.objective_value;
    double total = 0.0;
    for (std::size_t i = 0; i < support.size(); ++i) {
        const double y = sol.x[2 + i];
        if (y <= 1e-12) continue;
        out.policy.support.push_back(support[i]);
        out.policy.mass.push_back(y);
        total += y;
    }
    for (double& y : out.policy.mass) y /= total;
    return out;
}

double expected_cost(const PurchaseDistribution& y, const SkiInstance& instance) {
    const auto n = instance.horizon;
    const auto b = static_cast<double>(instance.buy_cost);
    double cost = 0.0;
    for (std::size_t i = 0; i < y.support.size(); ++i) {
        const auto t = y.support[i];
        cost += y.mass[i] * (t <= n ? b + static_cast<double>(t - 1) : static_cast<double>(n));
    }
    return cost;
}

RatioBounds drcr_oracle_bounds(const PurchaseDistribution& y, const Pip& pip, std::int64_t buy_cost) {
    y.validate();
    check_integer_pip(pip);
    const std::int64_t h = std::max(buy_cost, y.max_day()) + 1;
    auto ratio = [&](std::int64_t n) {
        return expected_cost(y, SkiInstance(n, buy_cost)) / static_cast<double>(std::min(n, buy_cost));
    };
    RatioBounds out;
    for (std::int64_t n = 1; n <= h; ++n) out.gamma = std::max(out.gamma, ratio(n));
    // The ratio is constant past h - 1, so the window scan can stop there.
    const auto lo = static_cast<std::int64_t>(pip.lower());
    const auto hi = std::min(static_cast<std::int64_t>(pip.upper()), std::max(lo, h));
    for (std::int64_t n = lo; n <= hi; ++n) out.eta = std::max(out.eta, ratio(n));
    out.drcr = drcr_value(out.eta, out.gamma, pip.delta());
    return out;
}

double drcr_oracle(const PurchaseDistribution& y, const Pip& pip, std::int64_t buy_cost) {
    return drcr_oracle_bounds(y, pip, buy_cost).drcr;
}

PurchaseDistribution woa_distribution(std::int64_t buy_cost) {
    if (buy_cost < 1) throw std::invalid_argument("buy cost must be at least 1");
    const double b = static_cast<double>(buy_cost);
    const double q = (b - 1.0) / b;
    const double norm = b * (1.0 - std::pow(q, b));
    PurchaseDistribution out;
    for (std::int64_t j = 1; j <= buy_cost; ++j) {
        out.support.push_back(j);
        out.mass.push_back(std::pow(q, static_cast<double>(buy_cost - j)) / norm);
    }
    return out;
}

std::optional<std::int64_t> ftp_buy_day(double prediction, double buy_cost, bool literal) {
    const bool buy = literal ? prediction < buy_cost : prediction >= buy_cost;
    if (buy) return std::int64_t{1};
    return std::nullopt;
}

double plan_cost(std::optional<std::int64_t> day, const SkiInstance& instance) {
    if (!day || *day > instance.horizon) return static_cast<double>(instance.horizon);
    if (*day < 1) throw std::invalid_argument("purchase day must be positive");
    return static_cast<double>(*day - 1 + instance.buy_cost);
}

double plan_ratio(std::optional<std::int64_t> day, const SkiInstance& instance) {
    return plan_cost(day, instance) / static_cast<double>(std::min(instance.horizon, instance.buy_cost));
}

std::vector<double> day_ratios(std::int64_t max_day, const SkiInstance& instance) {
    if (max_day < 1) throw std::invalid_argument("max_day must be at least 1");
    std::vector<double> out(static_cast<std::size_t>(max_day));
    for (std::int64_t d = 1; d <= max_day; ++d) out[d - 1] = plan_ratio(d, instance);
    return out;
}

}  // namespace uqo::ski

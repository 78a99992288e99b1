#pragma once

#include "uqo/core.hpp"
#include "uqo/lp.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace uqo::ski {

/// Distribution of the buying day. Support is sorted and strictly increasing.
struct PurchaseDistribution {
    std::vector<std::int64_t> support;
    std::vector<double> mass;

    void validate() const;
    std::int64_t max_day() const { return support.empty() ? 0 : support.back(); }
    /// Inverse-CDF draw with u in [0, 1).
    std::int64_t sample(double u) const;
};

PurchaseDistribution point_mass(std::int64_t day);

struct DrcrSolution {
    double eta = 0.0;
    double gamma = 0.0;
    double drcr = 0.0;
    PurchaseDistribution policy;
};

inline constexpr double kGoldenRatio = 1.6180339887498949;
inline constexpr double kLambdaFloor = 1e-6;

double chi(double delta);
double meta_lambda(double delta);
/// meta_lambda clipped to [kLambdaFloor, 1] for direct use as a buy-day scale.
double clipped_lambda(double delta);
double la_purohit_buy_day(double prediction, double lambda, double buy_cost);
double zeta(double delta, double lower, double buy_cost);

double dsr_buy_day(double prediction, double delta, double buy_cost);
double dsr_drcr(double prediction, double delta, double buy_cost);
double dsr_pip_buy_day(const Pip& pip, double buy_cost);
double dsr_pip_drcr(const Pip& pip, double buy_cost);

/// Continuous-time ratio of buying at time Y when skiing ends at N > 0.
double continuous_ratio(double buy_day, double horizon, double buy_cost);

struct RatioBounds {
    double eta = 0.0;
    double gamma = 0.0;
    double drcr = 0.0;
};

/// Brute-force consistency/robustness of a deterministic continuous buy day:
/// scans a uniform grid of horizons plus the breakpoints {Y, B, ℓ, u, Y ± ε}.
RatioBounds continuous_oracle(double buy_day, const Pip& pip, double buy_cost, int grid_points = 4000);

lp::LinearProgram build_rsr_lp(const Pip& pip, std::int64_t buy_cost);
/// Unreduced program over days 1..horizon with constraints C_1..C_horizon.
lp::LinearProgram build_full_rsr_lp(const Pip& pip, std::int64_t buy_cost, std::int64_t horizon);
/// Support days of the reduced program, in variable order after (eta, gamma).
std::vector<std::int64_t> rsr_support(const Pip& pip, std::int64_t buy_cost);

DrcrSolution solve_rsr(const Pip& pip, std::int64_t buy_cost);

double expected_cost(const PurchaseDistribution& y, const SkiInstance& instance);
RatioBounds drcr_oracle_bounds(const PurchaseDistribution& y, const Pip& pip, std::int64_t buy_cost);
double drcr_oracle(const PurchaseDistribution& y, const Pip& pip, std::int64_t buy_cost);

PurchaseDistribution woa_distribution(std::int64_t buy_cost);

/// Day-1 purchase or nullopt for renting forever. The default buys when the
/// prediction reaches B; `literal` flips the comparison.
std::optional<std::int64_t> ftp_buy_day(double prediction, double buy_cost, bool literal = false);

/// Discrete cost of a deterministic plan; nullopt means never buy.
double plan_cost(std::optional<std::int64_t> day, const SkiInstance& instance);
double plan_ratio(std::optional<std::int64_t> day, const SkiInstance& instance);

/// Ratio of buying on each day 1..max_day for this instance.
std::vector<double> day_ratios(std::int64_t max_day, const SkiInstance& instance);

}  // namespace uqo::ski

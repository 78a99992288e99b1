#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace uqo {

/// Raised when a solver reports a status that valid inputs can never produce.
class SolverError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Probabilistic interval prediction: the critical value lies in
/// [lower, upper] with probability at least 1 - delta.
class Pip {
public:
    Pip(double lower, double upper, double delta);

    double lower() const { return lower_; }
    double upper() const { return upper_; }
    double delta() const { return delta_; }

    bool contains(double value) const { return lower_ <= value && value <= upper_; }

    friend bool operator==(const Pip&, const Pip&) = default;

private:
    double lower_;
    double upper_;
    double delta_;
};

std::string to_string(const Pip& pip);

/// Interval [prediction - error, prediction + error] at confidence 1 - delta.
Pip pip_from_point(double prediction, double error, double delta);

/// Rounds the interval outward onto the integer days [1, max_value].
Pip clamp_pip_to_integer_range(const Pip& pip, std::int64_t max_value);

bool has_integer_bounds(const Pip& pip);

struct SkiInstance {
    SkiInstance(std::int64_t horizon, std::int64_t buy_cost);

    std::int64_t horizon;
    std::int64_t buy_cost;
};

struct SearchInstance {
    SearchInstance(std::vector<double> prices, double price_floor, double price_ceiling);

    double max_price() const;

    std::vector<double> prices;
    double price_floor;
    double price_ceiling;
};

/// One realized performance ratio. Cost problems store alg/opt, profit
/// problems opt/alg; the producer picks the orientation.
struct RatioSample {
    double alg_value = 0.0;
    double opt_value = 0.0;
    double ratio = 0.0;
};

/// (1 - delta)·eta + delta·gamma, with the gamma term dropped at delta = 0
/// so that an unbounded robustness does not poison a fully trusted bound.
double drcr_value(double eta, double gamma, double delta);

RatioSample cost_ratio(double alg_value, double opt_value);
RatioSample profit_ratio(double alg_value, double opt_value);

}  // namespace uqo

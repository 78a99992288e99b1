#include "uqo/core.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace uqo {

Pip::Pip(double lower, double upper, double delta) : lower_(lower), upper_(upper), delta_(delta) {
    if (!std::isfinite(lower) || !std::isfinite(upper))
        throw std::invalid_argument("pip bounds must be finite");
    if (lower > upper)
        throw std::invalid_argument("pip lower bound exceeds upper bound");
    if (!(delta >= 0.0 && delta <= 1.0))
        throw std::invalid_argument("pip delta must lie in [0, 1]");
}

std::string to_string(const Pip& pip) {
    std::ostringstream os;
    os << "{" << pip.lower() << ", " << pip.upper() << "; " << pip.delta() << "}";
    return os.str();
}

Pip pip_from_point(double prediction, double error, double delta) {
    if (!(error >= 0.0))
        throw std::invalid_argument("prediction error must be nonnegative");
    return Pip(prediction - error, prediction + error, delta);
}

Pip clamp_pip_to_integer_range(const Pip& pip, std::int64_t max_value) {
    if (max_value < 1)
        throw std::invalid_argument("max_value must be at least 1");
    const double top = static_cast<double>(max_value);
    const double lower = std::clamp(std::floor(pip.lower()), 1.0, top);
    const double upper = std::clamp(std::ceil(pip.upper()), 1.0, top);
    return Pip(lower, upper, pip.delta());
}

bool has_integer_bounds(const Pip& pip) {
    return std::floor(pip.lower()) == pip.lower() && std::floor(pip.upper()) == pip.upper();
}

SkiInstance::SkiInstance(std::int64_t horizon_days, std::int64_t cost)
    : horizon(horizon_days), buy_cost(cost) {
    if (horizon < 1) throw std::invalid_argument("ski horizon must be at least 1");
    if (buy_cost < 1) throw std::invalid_argument("buy cost must be at least 1");
}

SearchInstance::SearchInstance(std::vector<double> price_seq, double floor_price, double ceiling_price)
    : prices(std::move(price_seq)), price_floor(floor_price), price_ceiling(ceiling_price) {
    if (!(price_floor > 0.0)) throw std::invalid_argument("price floor must be positive");
    if (price_ceiling < price_floor) throw std::invalid_argument("price ceiling below floor");
    if (prices.empty()) throw std::invalid_argument("price sequence is empty");
    for (double p : prices) {
        if (!(p >= price_floor && p <= price_ceiling))
            throw std::invalid_argument("price outside [m, M]");
    }
}

double SearchInstance::max_price() const {
    return *std::max_element(prices.begin(), prices.end());
}

double drcr_value(double eta, double gamma, double delta) {
    if (delta == 0.0) return eta;
    if (delta == 1.0) return gamma;
    return (1.0 - delta) * eta + delta * gamma;
}

RatioSample cost_ratio(double alg_value, double opt_value) {
    if (!(opt_value > 0.0)) throw std::invalid_argument("offline optimum must be positive");
    return {alg_value, opt_value, alg_value / opt_value};
}

RatioSample profit_ratio(double alg_value, double opt_value) {
    if (!(opt_value > 0.0)) throw std::invalid_argument("offline optimum must be positive");
    if (!(alg_value > 0.0)) throw std::invalid_argument("online profit must be positive");
    return {alg_value, opt_value, opt_value / alg_value};
}

}  // namespace uqo

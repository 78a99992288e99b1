#pragma once

// Brute-force reference computations used by the tests. They share no code
// with the library beyond plain data types.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <vector>

namespace oracle {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

inline double mix(double eta, double gamma, double delta) {
    if (delta == 0.0) return eta;
    if (delta == 1.0) return gamma;
    return (1.0 - delta) * eta + delta * gamma;
}

// ---- continuous-time ski rental ----

// Cost of buying at time y when the season lasts n.
inline double continuous_cost(double y, double n, double b) { return n <= y ? n : y + b; }

struct Bounds {
    double eta = 0.0;
    double gamma = 0.0;
    double drcr = 0.0;
};

// Worst ratio over season lengths inside [lo, hi] and over all lengths,
// scanning a dense grid plus the points where the ratio can jump.
inline Bounds continuous_ski(double y, double lo, double hi, double delta, double b) {
    auto ratio = [&](double n) { return continuous_cost(y, n, b) / std::min(n, b); };
    const double jump = y + 1e-10 * std::max(1.0, y);
    std::vector<double> probes{lo, hi, b, y, jump};
    for (int i = 0; i <= 20000; ++i) probes.push_back(lo + (hi - lo) * i / 20000.0);
    Bounds r;
    for (double n : probes)
        if (n >= lo && n <= hi && n > 0) r.eta = std::max(r.eta, ratio(n));
    if (y <= 0.0) {
        r.gamma = kInf;
    } else {
        const double top = 2.0 * std::max({y, b, hi}) + 1.0;
        for (int i = 1; i <= 40000; ++i) probes.push_back(top * i / 40000.0);
        for (double n : probes)
            if (n > 0) r.gamma = std::max(r.gamma, ratio(n));
    }
    r.gamma = std::max(r.gamma, r.eta);
    r.drcr = mix(r.eta, r.gamma, delta);
    return r;
}

// ---- discrete-day ski rental ----

// Buying on the morning of day d: rent d-1 days, then pay b. Never bought
// if the season ends first.
inline double day_cost(std::int64_t d, std::int64_t n, std::int64_t b) {
    return n < d ? static_cast<double>(n) : static_cast<double>(d - 1 + b);
}

inline double expected_ratio(const std::vector<std::int64_t>& days, const std::vector<double>& mass, std::int64_t n,
                             std::int64_t b) {
    double c = 0.0;
    for (std::size_t i = 0; i < days.size(); ++i) c += mass[i] * day_cost(days[i], n, b);
    return c / static_cast<double>(std::min(n, b));
}

inline Bounds discrete_ski(const std::vector<std::int64_t>& days, const std::vector<double>& mass, std::int64_t lo,
                           std::int64_t hi, double delta, std::int64_t b) {
    std::int64_t last = b;
    for (auto d : days) last = std::max(last, d);
    Bounds r;
    for (std::int64_t n = 1; n <= std::max(last, hi) + 2; ++n) {
        const double v = expected_ratio(days, mass, n, b);
        r.gamma = std::max(r.gamma, v);
        if (n >= lo && n <= hi) r.eta = std::max(r.eta, v);
    }
    r.drcr = mix(r.eta, r.gamma, delta);
    return r;
}

// ---- online search ----

// Cumulative fraction sold once the running maximum reaches `price`.
inline double protection_at(const std::vector<double>& values, const std::vector<double>& cumulative, double price) {
    double g = 0.0;
    for (std::size_t k = 0; k < values.size() && values[k] <= price; ++k) g = cumulative[k];
    return g;
}

// Protection-function trading: on each new running maximum sell up to G of
// it; whatever is left goes at the final price.
inline double protection_profit(const std::vector<double>& values, const std::vector<double>& cumulative,
                                const std::vector<double>& prices) {
    double sold = 0.0, profit = 0.0, best = -kInf;
    for (std::size_t n = 0; n + 1 < prices.size(); ++n) {
        if (prices[n] <= best) continue;
        best = prices[n];
        const double x = std::max(0.0, protection_at(values, cumulative, best) - sold);
        profit += x * prices[n];
        sold += x;
    }
    return profit + (1.0 - sold) * prices.back();
}

// Rising sequence through every grid value below `peak`, then `peak`, then a
// crash to the floor.
inline std::vector<double> ramp(const std::vector<double>& values, double peak) {
    std::vector<double> p;
    for (double v : values)
        if (v < peak) p.push_back(v);
    p.push_back(peak);
    p.push_back(values.front());
    return p;
}

inline double ramp_ratio(const std::vector<double>& values, const std::vector<double>& cumulative, double peak) {
    return peak / protection_profit(values, cumulative, ramp(values, peak));
}

// Worst ramp ratio with the peak inside [lo, hi] and anywhere in [m, M].
inline Bounds search_bounds(const std::vector<double>& values, const std::vector<double>& cumulative, double lo,
                            double hi, double delta) {
    std::vector<double> peaks(values);
    for (std::size_t k = 0; k + 1 < values.size(); ++k) {
        peaks.push_back(values[k + 1] * (1.0 - 1e-12));
        for (int j = 1; j < 8; ++j) peaks.push_back(values[k] + (values[k + 1] - values[k]) * j / 8.0);
    }
    peaks.push_back(lo);
    peaks.push_back(hi);
    Bounds r;
    for (double v : peaks) {
        if (v < values.front() || v > values.back()) continue;
        const double q = ramp_ratio(values, cumulative, v);
        r.gamma = std::max(r.gamma, q);
        if (v >= lo && v <= hi) r.eta = std::max(r.eta, q);
    }
    r.drcr = mix(r.eta, r.gamma, delta);
    return r;
}

// Root of a = ln((M/m - 1)/(a - 1)) by bisection.
inline double threat_alpha(double m, double M) {
    double lo = 1.0, hi = std::max(2.0, M / m);
    for (int i = 0; i < 300; ++i) {
        const double a = 0.5 * (lo + hi);
        if (a - std::log((M / m - 1.0) / (a - 1.0)) > 0) hi = a;
        else lo = a;
    }
    return 0.5 * (lo + hi);
}

}  // namespace oracle

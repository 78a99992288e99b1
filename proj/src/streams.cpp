#include "uqo/streams.hpp"

#include "uqo/online_search.hpp"
#include "uqo/rng.hpp"

#include <algorithm>

namespace uqo {

double interval_z(double confidence) { return normal_quantile(0.5 * (1.0 + confidence)); }

std::vector<SkiRound> generate_ski_stream(const ExperimentConfig& config, std::uint64_t run_seed) {
    Rng rng(run_seed);
    const double z = interval_z(config.confidence);
    const double delta = config.effective_delta();
    std::vector<SkiRound> out;
    out.reserve(static_cast<std::size_t>(config.T));
    for (std::int64_t t = 0; t < config.T; ++t) {
        const auto n = rng.uniform_int(config.day_min, config.day_max);
        const double sigma = config.sigma_at(t);
        // Always consume the normal so every round uses the same draws.
        const double p = static_cast<double>(n) + sigma * rng.normal();
        const Pip raw(p - z * sigma, p + z * sigma, delta);
        out.push_back({clamp_pip_to_integer_range(raw, config.horizon_max), SkiInstance(n, config.B), p, sigma});
    }
    return out;
}

std::vector<SearchRound> generate_search_stream(const ExperimentConfig& config, std::uint64_t run_seed) {
    Rng rng(run_seed);
    const double z = interval_z(config.confidence);
    const double delta = config.effective_delta();
    const double m = config.m, M = config.M;
    std::vector<SearchRound> out;
    out.reserve(static_cast<std::size_t>(config.T));
    for (std::int64_t t = 0; t < config.T; ++t) {
        const double peak = m + (M - m) * rng.uniform();
        const double sigma = config.sigma_at(t);
        const double p = peak + sigma * rng.normal();
        const double lo = std::clamp(p - z * sigma, m, M);
        const double hi = std::clamp(p + z * sigma, m, M);
        out.push_back({Pip(lo, hi, delta),
                       search::hard_instance(peak, m, M, static_cast<int>(config.search_steps)), p, sigma});
    }
    return out;
}

}  // namespace uqo

#pragma once

#include "uqo/config.hpp"
#include "uqo/core.hpp"

#include <cstdint>
#include <vector>

namespace uqo {

struct SkiRound {
    Pip pip;
    SkiInstance instance;
    double prediction;
    double sigma;
};

struct SearchRound {
    Pip pip;
    SearchInstance instance;
    double prediction;
    double sigma;
};

/// Two-sided z for the configured coverage, e.g. 1.6449 at 0.90.
double interval_z(double confidence);

/// True days uniform on the day support; prediction p ~ N(n, σ_t²); interval
/// p ± zσ_t rounded outward onto [1, horizon_max].
std::vector<SkiRound> generate_ski_stream(const ExperimentConfig& config, std::uint64_t run_seed);

/// Peak V uniform on [m, M]; prediction p ~ N(V, σ_t²) with the interval
/// p ± zσ_t clamped to [m, M]; the instance ramps geometrically from m to V
/// over search_steps prices and then crashes to m.
std::vector<SearchRound> generate_search_stream(const ExperimentConfig& config, std::uint64_t run_seed);

}  // namespace uqo

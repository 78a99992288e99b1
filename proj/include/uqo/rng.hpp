#pragma once

#include <cstdint>
#include <optional>
#include <random>

namespace uqo {

/// Seeded stream over std::mt19937_64. Uniforms take the top 53 bits of each
/// draw and normals use Box–Muller, so sequences are identical on every
/// conforming platform.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next_u64() { return engine_(); }
    /// Uniform on [0, 1).
    double uniform();
    /// Uniform integer on [lo, hi], by rejection.
    std::int64_t uniform_int(std::int64_t lo, std::int64_t hi);
    double normal();
    double normal(double mean, double stddev) { return mean + stddev * normal(); }

private:
    std::mt19937_64 engine_;
    std::optional<double> spare_;
};

std::uint64_t splitmix64(std::uint64_t x);

double normal_cdf(double x);
/// Inverse standard-normal CDF by bisection on normal_cdf; p in (0, 1).
double normal_quantile(double p);

}  // namespace uqo

#pragma once

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace uqo {

class ConfigError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class Problem { SkiRental, OnlineSearch };

/// Algorithm slots in canonical order; the index also seeds the per-algorithm
/// sampling stream, so enabling or disabling one never perturbs another.
enum class Algorithm { Woa = 0, Ftp = 1, RsrPip = 2, OlDynamic = 3, OlStatic = 4, DsrPip = 5 };

const char* algorithm_name(Algorithm algorithm, Problem problem);
Algorithm parse_algorithm(const std::string& name);

struct SigmaPhase {
    std::int64_t length = 0;
    double sigma = 0.0;
};

struct ExperimentConfig {
    Problem problem = Problem::SkiRental;
    std::int64_t T = 3000;
    std::int64_t runs = 10;
    std::uint64_t seed = 1;
    std::int64_t threads = 1;

    // Ski rental.
    std::int64_t B = 2;
    std::int64_t horizon_max = 8;
    std::int64_t day_min = 1;
    std::int64_t day_max = 8;
    bool ftp_literal = false;

    std::vector<SigmaPhase> sigma_pattern{{10, 0.0}, {10, 6.0}};
    double confidence = 0.90;
    double delta = -1.0;  // negative: use 1 - confidence

    std::vector<Algorithm> algorithms{Algorithm::Woa, Algorithm::Ftp, Algorithm::RsrPip, Algorithm::OlDynamic,
                                      Algorithm::OlStatic};

    // Online search.
    double m = 1.0;
    double M = 4.0;
    double grid_eps = 0.01;
    std::int64_t search_steps = 8;

    double eg_step_scale = 4.0;
    bool memoize = true;

    double effective_delta() const { return delta < 0.0 ? 1.0 - confidence : delta; }
    double sigma_at(std::int64_t round_index) const;
    void validate() const;
};

/// Keys accepted by set_config_value, in documentation order.
const std::vector<std::string>& config_keys();

/// Applies one `key = value` setting. Throws ConfigError on unknown keys or
/// unparsable values.
void set_config_value(ExperimentConfig& config, const std::string& key, const std::string& value);

/// Reads `key = value` lines; `#` starts a comment. Throws IoError if the file
/// cannot be read and ConfigError (with the line number) on bad content.
std::vector<std::pair<std::string, std::string>> read_config_file(const std::string& path);

ExperimentConfig load_config(const std::string& path);

std::string describe(const ExperimentConfig& config);

}  // namespace uqo

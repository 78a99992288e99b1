#pragma once

#include "uqo/config.hpp"
#include "uqo/online_search.hpp"
#include "uqo/ski_rental.hpp"

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <tuple>
#include <vector>

namespace uqo {

struct ExperimentRecord {
    std::int64_t run = 0;
    std::int64_t t = 0;
    std::string algorithm;
    double ell = 0.0;
    double u = 0.0;
    double delta = 0.0;
    double true_value = 0.0;
    double ratio = 0.0;              // sampled realization
    double cumulative_excess = 0.0;  // running mean of ratio, minus 1
    // Not written to CSV.
    double expected_ratio = 0.0;
    double benchmark = 0.0;
};

struct SummaryRow {
    std::string algorithm;
    std::int64_t t = 0;
    double mean_cumulative_excess = 0.0;
    double mean_cumulative_regret = 0.0;
    std::int64_t runs = 0;
};

struct ExperimentStats {
    std::size_t lp_solves = 0;
    std::size_t cache_hits = 0;
    std::size_t clip_events = 0;
};

/// DRCR-optimal solutions keyed on (ℓ, u, δ). With memoization off every
/// request solves afresh; results are identical either way.
class DrcrCache {
public:
    explicit DrcrCache(bool enabled) : enabled_(enabled) {}

    std::shared_ptr<const ski::DrcrSolution> ski(const Pip& pip, std::int64_t buy_cost);
    std::shared_ptr<const search::SearchDrcrSolution> search(const Pip& pip, double m, double M, double eps);

    std::size_t solves() const;
    std::size_t hits() const;

private:
    using Key = std::tuple<double, double, double>;
    bool enabled_;
    mutable std::mutex mutex_;
    std::map<Key, std::shared_ptr<const ski::DrcrSolution>> ski_;
    std::map<Key, std::shared_ptr<const search::SearchDrcrSolution>> search_;
    std::size_t solves_ = 0;
    std::size_t hits_ = 0;
};

struct ExperimentResult {
    ExperimentConfig config;
    std::vector<ExperimentRecord> records;  // ordered by run, then configured algorithm, then t
    std::vector<SummaryRow> summary;
    ExperimentStats stats;
};

/// Checkpoints {100, 500, 1000, 3000} that do not exceed T, plus T.
std::vector<std::int64_t> summary_checkpoints(std::int64_t T);

ExperimentResult run_experiment(const ExperimentConfig& config);

std::vector<SummaryRow> summarize(const ExperimentConfig& config, const std::vector<ExperimentRecord>& records);

inline constexpr const char* kRecordsHeader = "run,t,algorithm,ell,u,delta,true_value,ratio,cumulative_excess";

void write_records_csv(const std::string& path, const std::vector<ExperimentRecord>& records);
void write_summary_csv(const std::string& path, const std::vector<SummaryRow>& summary);

/// Writes records.csv and summary.csv under out_dir (created if missing).
/// Files written before a failure are removed.
void write_experiment(const ExperimentResult& result, const std::string& out_dir);

}  // namespace uqo

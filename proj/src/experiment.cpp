#include "uqo/experiment.hpp"

#include "uqo/online_learning.hpp"
#include "uqo/rng.hpp"
#include "uqo/streams.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <filesystem>
#include <fstream>
#include <thread>

namespace uqo {

namespace {

namespace fs = std::filesystem;

struct RunOutput {
    std::vector<ExperimentRecord> records;
    std::size_t clip_events = 0;
};

class RecordSink {
public:
    RecordSink(RunOutput& out, std::int64_t run, const char* name) : out_(out), run_(run), name_(name) {}

    void push(std::int64_t t, const Pip& pip, double true_value, double sampled, double expected, double benchmark) {
        sum_ += sampled;
        ExperimentRecord r;
        r.run = run_;
        r.t = t;
        r.algorithm = name_;
        r.ell = pip.lower();
        r.u = pip.upper();
        r.delta = pip.delta();
        r.true_value = true_value;
        r.ratio = sampled;
        r.cumulative_excess = sum_ / static_cast<double>(t) - 1.0;
        r.expected_ratio = expected;
        r.benchmark = benchmark;
        out_.records.push_back(std::move(r));
    }

private:
    RunOutput& out_;
    std::int64_t run_;
    const char* name_;
    double sum_ = 0.0;
};

std::uint64_t algorithm_seed(std::uint64_t run_seed, Algorithm a) {
    return splitmix64(run_seed * 16 + static_cast<std::uint64_t>(a));
}

double ski_expected_ratio(const ski::PurchaseDistribution& y, const SkiInstance& inst) {
    return ski::expected_cost(y, inst) / static_cast<double>(std::min(inst.horizon, inst.buy_cost));
}

RunOutput run_ski(const ExperimentConfig& cfg, std::int64_t run, DrcrCache& cache) {
    const std::uint64_t run_seed = cfg.seed + static_cast<std::uint64_t>(run);
    const auto stream = generate_ski_stream(cfg, run_seed);
    RunOutput out;
    const auto woa = ski::woa_distribution(cfg.B);

    for (Algorithm a : cfg.algorithms) {
        Rng draws(algorithm_seed(run_seed, a));
        RecordSink sink(out, run, algorithm_name(a, cfg.problem));
        learn::OlDynamicSki dynamic(cfg.horizon_max, cfg.B, cfg.T, cfg.eg_step_scale, learn::StepSchedule::Anytime);
        learn::OlStaticSki fixed(cfg.horizon_max, cfg.B, cfg.T, cfg.eg_step_scale, learn::StepSchedule::FixedHorizon);

        for (std::size_t i = 0; i < stream.size(); ++i) {
            const auto& round = stream[i];
            const auto t = static_cast<std::int64_t>(i) + 1;
            const double draw = draws.uniform();
            const auto optimal = cache.ski(round.pip, cfg.B);
            const double bench = optimal->drcr;
            double expected = 0.0, sampled = 0.0;
            switch (a) {
                case Algorithm::Woa:
                    expected = ski_expected_ratio(woa, round.instance);
                    sampled = ski::plan_ratio(woa.sample(draw), round.instance);
                    break;
                case Algorithm::Ftp:
                    expected = sampled =
                        ski::plan_ratio(ski::ftp_buy_day(round.prediction, static_cast<double>(cfg.B), cfg.ftp_literal),
                                        round.instance);
                    break;
                case Algorithm::RsrPip: {
                    const auto& y = optimal->policy;
                    expected = ski_expected_ratio(y, round.instance);
                    sampled = ski::plan_ratio(y.sample(draw), round.instance);
                    break;
                }
                case Algorithm::DsrPip: {
                    const double day = ski::dsr_pip_buy_day(round.pip, static_cast<double>(cfg.B));
                    const auto d = std::max<std::int64_t>(1, static_cast<std::int64_t>(std::ceil(day)));
                    expected = sampled = ski::plan_ratio(d, round.instance);
                    break;
                }
                case Algorithm::OlDynamic: {
                    const auto res = dynamic.round(round.pip, round.instance, bench, draw);
                    expected = res.log.expected_ratio;
                    sampled = res.log.sampled_ratio;
                    break;
                }
                case Algorithm::OlStatic: {
                    const auto res = fixed.round(round.pip, round.instance, bench, draw);
                    expected = res.log.expected_ratio;
                    sampled = res.log.sampled_ratio;
                    break;
                }
            }
            sink.push(t, round.pip, static_cast<double>(round.instance.horizon), sampled, expected, bench);
        }
        out.clip_events += dynamic.clip_count() + fixed.learner().clip_count();
    }
    return out;
}

RunOutput run_search(const ExperimentConfig& cfg, std::int64_t run, DrcrCache& cache) {
    const std::uint64_t run_seed = cfg.seed + static_cast<std::uint64_t>(run);
    const auto stream = generate_search_stream(cfg, run_seed);
    RunOutput out;
    const auto woa = search::worst_case_protection(cfg.m, cfg.M, cfg.grid_eps);

    for (Algorithm a : cfg.algorithms) {
        RecordSink sink(out, run, algorithm_name(a, cfg.problem));
        std::unique_ptr<learn::OlSearchLearner> learner;
        if (a == Algorithm::OlDynamic)
            learner = std::make_unique<learn::OlSearchLearner>(cfg.m, cfg.M, cfg.T, cfg.eg_step_scale,
                                                               learn::StepSchedule::Anytime, true);
        if (a == Algorithm::OlStatic)
            learner = std::make_unique<learn::OlSearchLearner>(cfg.m, cfg.M, cfg.T, cfg.eg_step_scale,
                                                               learn::StepSchedule::FixedHorizon, false);

        for (std::size_t i = 0; i < stream.size(); ++i) {
            const auto& round = stream[i];
            const auto t = static_cast<std::int64_t>(i) + 1;
            const auto optimal = cache.search(round.pip, cfg.m, cfg.M, cfg.grid_eps);
            const double bench = optimal->drcr;
            double ratio = 0.0;
            switch (a) {
                case Algorithm::Woa:
                    ratio = search::pfa_run(woa, round.instance).ratio;
                    break;
                case Algorithm::Ftp: {
                    const double threshold = std::clamp(round.prediction, cfg.m, cfg.M);
                    ratio = round.instance.max_price() / learn::threshold_profit(threshold, round.instance);
                    break;
                }
                case Algorithm::RsrPip:
                    ratio = search::pfa_run(optimal->protection, round.instance).ratio;
                    break;
                case Algorithm::OlDynamic:
                case Algorithm::OlStatic:
                    ratio = learner->round(round.pip, round.instance, bench).log.expected_ratio;
                    break;
                case Algorithm::DsrPip:
                    throw ConfigError("DSR-PIP applies to ski rental only");
            }
            sink.push(t, round.pip, round.instance.max_price(), ratio, ratio, bench);
        }
        if (learner) out.clip_events += learner->clip_count();
    }
    return out;
}

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

template <class Fn>
void write_file(const std::string& path, Fn&& body) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open for writing: " + path);
    body(out);
    out.flush();
    if (!out) throw IoError("write failed: " + path);
}

}  // namespace

namespace {

// Looks up `key`, solving outside the lock on a miss so parallel runs can
// solve distinct keys concurrently.
template <class Value, class Solve>
std::shared_ptr<const Value> cached(std::map<std::tuple<double, double, double>, std::shared_ptr<const Value>>& table,
                                    const std::tuple<double, double, double>& key, bool enabled, std::mutex& mutex,
                                    std::size_t& solves, std::size_t& hits, Solve&& solve) {
    if (enabled) {
        std::lock_guard lock(mutex);
        if (const auto it = table.find(key); it != table.end()) {
            ++hits;
            return it->second;
        }
    }
    auto fresh = std::make_shared<const Value>(solve());
    std::lock_guard lock(mutex);
    ++solves;
    if (!enabled) return fresh;
    return table.emplace(key, std::move(fresh)).first->second;
}

}  // namespace

std::shared_ptr<const ski::DrcrSolution> DrcrCache::ski(const Pip& pip, std::int64_t buy_cost) {
    return cached(ski_, Key{pip.lower(), pip.upper(), pip.delta()}, enabled_, mutex_, solves_, hits_,
                  [&] { return ski::solve_rsr(pip, buy_cost); });
}

std::shared_ptr<const search::SearchDrcrSolution> DrcrCache::search(const Pip& pip, double m, double M, double eps) {
    return cached(search_, Key{pip.lower(), pip.upper(), pip.delta()}, enabled_, mutex_, solves_, hits_,
                  [&] { return search::solve_pfa(pip, m, M, eps); });
}

std::size_t DrcrCache::solves() const {
    std::lock_guard lock(mutex_);
    return solves_;
}

std::size_t DrcrCache::hits() const {
    std::lock_guard lock(mutex_);
    return hits_;
}

std::vector<std::int64_t> summary_checkpoints(std::int64_t T) {
    std::vector<std::int64_t> out;
    for (std::int64_t c : {100, 500, 1000, 3000})
        if (c <= T) out.push_back(c);
    if (out.empty() || out.back() != T) out.push_back(T);
    return out;
}

ExperimentResult run_experiment(const ExperimentConfig& config) {
    config.validate();
    ExperimentResult result;
    result.config = config;
    DrcrCache cache(config.memoize);

    const auto runs = static_cast<std::size_t>(config.runs);
    std::vector<RunOutput> outputs(runs);
    std::vector<std::exception_ptr> errors(runs);
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t r; (r = next++) < runs;) {
            try {
                const auto run = static_cast<std::int64_t>(r);
                outputs[r] = config.problem == Problem::SkiRental ? run_ski(config, run, cache)
                                                                  : run_search(config, run, cache);
            } catch (...) {
                errors[r] = std::current_exception();
            }
        }
    };
    const auto n_threads = std::min<std::size_t>(static_cast<std::size_t>(config.threads), runs);
    if (n_threads <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (std::size_t i = 0; i < n_threads; ++i) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }
    for (const auto& e : errors)
        if (e) std::rethrow_exception(e);

    for (auto& o : outputs) {
        result.stats.clip_events += o.clip_events;
        std::move(o.records.begin(), o.records.end(), std::back_inserter(result.records));
    }
    result.stats.lp_solves = cache.solves();
    result.stats.cache_hits = cache.hits();
    result.summary = summarize(config, result.records);
    return result;
}

std::vector<SummaryRow> summarize(const ExperimentConfig& config, const std::vector<ExperimentRecord>& records) {
    std::vector<SummaryRow> out;
    const auto checkpoints = summary_checkpoints(config.T);
    for (Algorithm a : config.algorithms) {
        const std::string name = algorithm_name(a, config.problem);
        for (std::int64_t c : checkpoints) {
            SummaryRow row{name, c, 0.0, 0.0, 0};
            out.push_back(row);
        }
    }
    // Regret needs the running sum per (run, algorithm), so walk in order.
    std::map<std::pair<std::int64_t, std::string>, double> regret;
    for (const auto& r : records) {
        double& reg = regret[{r.run, r.algorithm}];
        reg += r.expected_ratio - r.benchmark;
        for (auto& row : out) {
            if (row.algorithm == r.algorithm && row.t == r.t) {
                row.mean_cumulative_excess += r.cumulative_excess;
                row.mean_cumulative_regret += reg;
                ++row.runs;
            }
        }
    }
    for (auto& row : out) {
        if (row.runs == 0) continue;
        row.mean_cumulative_excess /= static_cast<double>(row.runs);
        row.mean_cumulative_regret /= static_cast<double>(row.runs);
    }
    return out;
}

void write_records_csv(const std::string& path, const std::vector<ExperimentRecord>& records) {
    write_file(path, [&](std::ostream& os) {
        os << kRecordsHeader << "\n";
        for (const auto& r : records) {
            os << r.run << "," << r.t << "," << r.algorithm << "," << fmt(r.ell) << "," << fmt(r.u) << ","
               << fmt(r.delta) << "," << fmt(r.true_value) << "," << fmt(r.ratio) << "," << fmt(r.cumulative_excess)
               << "\n";
        }
    });
}

void write_summary_csv(const std::string& path, const std::vector<SummaryRow>& summary) {
    write_file(path, [&](std::ostream& os) {
        os << "algorithm,t,mean_cumulative_excess,mean_cumulative_regret,runs\n";
        for (const auto& s : summary)
            os << s.algorithm << "," << s.t << "," << fmt(s.mean_cumulative_excess) << ","
               << fmt(s.mean_cumulative_regret) << "," << s.runs << "\n";
    });
}

void write_experiment(const ExperimentResult& result, const std::string& out_dir) {
    std::error_code ec;
    fs::create_directories(out_dir, ec);
    if (ec) throw IoError("cannot create output directory: " + out_dir + " (" + ec.message() + ")");
    const auto records = (fs::path(out_dir) / "records.csv").string();
    const auto summary = (fs::path(out_dir) / "summary.csv").string();
    try {
        write_records_csv(records, result.records);
        write_summary_csv(summary, result.summary);
    } catch (...) {
        fs::remove(records, ec);
        fs::remove(summary, ec);
        throw;
    }
}

}  // namespace uqo

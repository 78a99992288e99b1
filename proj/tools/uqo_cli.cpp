#include <uqo/uqo.h>

#include <CLI11.hpp>

#include <cstdio>
#include <map>
#include <string>
#include <vector>

namespace {

constexpr int kExitInternal = 1;
constexpr int kExitConfig = 2;
constexpr int kExitSolver = 3;
constexpr int kExitIo = 4;

int exit_code(uqo_status status) {
    switch (status) {
        case UQO_OK: return 0;
        case UQO_ERR_INVALID_ARGUMENT:
        case UQO_ERR_INVALID_CONFIG: return kExitConfig;
        case UQO_ERR_SOLVER: return kExitSolver;
        case UQO_ERR_IO: return kExitIo;
        default: return kExitInternal;
    }
}

int report(uqo_status status) {
    if (status != UQO_OK) std::fprintf(stderr, "error: %s\n", uqo_last_error());
    return exit_code(status);
}

struct SkiArgs {
    double ell = 1, u = 1, delta = 0.1, B = 2;
    bool deterministic = false;
};

int solve_ski(const SkiArgs& a) {
    if (a.deterministic) {
        double day = 0, drcr = 0;
        if (auto s = uqo_ski_deterministic(a.ell, a.u, a.delta, a.B, &day, &drcr)) return report(s);
        std::printf("buy_day = %.10g\ndrcr = %.10g\n", day, drcr);
        return 0;
    }
    if (a.B != static_cast<double>(static_cast<int64_t>(a.B))) {
        std::fprintf(stderr, "error: the randomized policy needs an integer --B\n");
        return kExitConfig;
    }
    uqo_ski_solution* sol = nullptr;
    if (auto s = uqo_ski_solve(a.ell, a.u, a.delta, static_cast<int64_t>(a.B), &sol)) return report(s);
    double eta = 0, gamma = 0, drcr = 0;
    uqo_ski_solution_summary(sol, &eta, &gamma, &drcr);
    std::printf("eta = %.10g\ngamma = %.10g\ndrcr = %.10g\n", eta, gamma, drcr);
    std::printf("day,probability\n");
    for (size_t i = 0; i < uqo_ski_solution_support_size(sol); ++i) {
        int64_t day = 0;
        double mass = 0;
        uqo_ski_solution_support(sol, i, &day, &mass);
        std::printf("%lld,%.10g\n", static_cast<long long>(day), mass);
    }
    uqo_ski_solution_free(sol);
    return 0;
}

struct SearchArgs {
    double ell = 1, u = 4, delta = 0.1, m = 1, M = 4, eps = 0.01;
};

int solve_search(const SearchArgs& a) {
    uqo_search_solution* sol = nullptr;
    if (auto s = uqo_search_solve(a.ell, a.u, a.delta, a.m, a.M, a.eps, &sol)) return report(s);
    double eta = 0, gamma = 0, drcr = 0, lp_eta = 0, lp_gamma = 0, lp_obj = 0;
    uqo_search_solution_summary(sol, &eta, &gamma, &drcr);
    uqo_search_solution_relaxation(sol, &lp_eta, &lp_gamma, &lp_obj);
    std::printf("eta = %.10g\ngamma = %.10g\ndrcr = %.10g\n", eta, gamma, drcr);
    std::printf("relaxation_eta = %.10g\nrelaxation_gamma = %.10g\nrelaxation_drcr = %.10g\n", lp_eta, lp_gamma,
                lp_obj);
    std::printf("price,cumulative_sold\n");
    for (size_t i = 0; i < uqo_search_solution_grid_size(sol); ++i) {
        double price = 0, cum = 0;
        uqo_search_solution_point(sol, i, &price, &cum);
        std::printf("%.10g,%.10g\n", price, cum);
    }
    uqo_search_solution_free(sol);
    return 0;
}

int run(const std::string& config_path, const std::string& out_dir, const std::map<std::string, std::string>& set,
        bool quiet) {
    uqo_config* cfg = nullptr;
    const uqo_status loaded = config_path.empty() ? uqo_config_new(&cfg) : uqo_config_load(config_path.c_str(), &cfg);
    if (loaded != UQO_OK) return report(loaded);
    for (const auto& [key, value] : set) {
        if (auto s = uqo_config_set(cfg, key.c_str(), value.c_str())) {
            uqo_config_free(cfg);
            return report(s);
        }
    }
    if (!quiet) std::fprintf(stderr, "%s", uqo_config_describe(cfg));
    uqo_run_stats stats{};
    const uqo_status s = uqo_run_experiment(cfg, out_dir.c_str(), &stats);
    uqo_config_free(cfg);
    if (s != UQO_OK) return report(s);
    std::printf("records = %llu\nlp_solves = %llu\ncache_hits = %llu\nclip_events = %llu\n",
                static_cast<unsigned long long>(stats.records), static_cast<unsigned long long>(stats.lp_solves),
                static_cast<unsigned long long>(stats.cache_hits), static_cast<unsigned long long>(stats.clip_events));
    std::printf("wrote %s/records.csv and %s/summary.csv\n", out_dir.c_str(), out_dir.c_str());
    return 0;
}

void print_check(const char* name, int passed, double worst, double tolerance, const char* detail, void*) {
    std::printf("%s  %-48s worst=%.3e tol=%.1e  %s\n", passed ? "PASS" : "FAIL", name, worst, tolerance, detail);
}

int oracle_check(const std::string& problem, uint64_t seed) {
    const uqo_problem p = problem == "search" || problem == "online-search" ? UQO_ONLINE_SEARCH : UQO_SKI_RENTAL;
    int all = 0;
    if (auto s = uqo_oracle_check(p, seed, print_check, nullptr, &all)) return report(s);
    return all ? 0 : kExitSolver;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Interval-prediction online algorithms: ski rental and online search"};
    app.set_version_flag("--version", uqo_version());
    app.require_subcommand(1);

    SkiArgs ski;
    auto* ski_cmd = app.add_subcommand("solve-ski", "DRCR-optimal ski-rental policy for one interval prediction");
    ski_cmd->add_option("--ell", ski.ell, "Interval lower end")->required();
    ski_cmd->add_option("--u", ski.u, "Interval upper end")->required();
    ski_cmd->add_option("--delta", ski.delta, "Probability the interval misses")->required();
    ski_cmd->add_option("--B", ski.B, "Buying cost")->required();
    ski_cmd->add_flag("--deterministic", ski.deterministic, "Use the deterministic continuous-time policy");

    SearchArgs search;
    auto* search_cmd = app.add_subcommand("solve-search", "DRCR-optimal protection function for online search");
    search_cmd->add_option("--ell", search.ell, "Interval lower end")->required();
    search_cmd->add_option("--u", search.u, "Interval upper end")->required();
    search_cmd->add_option("--delta", search.delta, "Probability the interval misses")->required();
    search_cmd->add_option("--m", search.m, "Price floor")->required();
    search_cmd->add_option("--M", search.M, "Price ceiling")->required();
    search_cmd->add_option("--eps", search.eps, "Grid resolution")->capture_default_str();

    std::string config_path, out_dir = "out";
    bool quiet = false;
    std::map<std::string, std::string> overrides;
    auto* run_cmd = app.add_subcommand("run", "Run the multi-instance experiment and write CSV output");
    run_cmd->add_option("--config", config_path, "Config file of `key = value` lines");
    run_cmd->add_option("--out", out_dir, "Output directory")->capture_default_str();
    run_cmd->add_flag("--quiet", quiet, "Do not echo the effective configuration");
    for (size_t i = 0; i < uqo_config_key_count(); ++i) {
        const std::string key = uqo_config_key(i);
        run_cmd->add_option_function<std::string>(
            "--" + key, [&overrides, key](const std::string& v) { overrides[key] = v; },
            "Override config key '" + key + "'");
    }

    std::string csv_path, svg_path;
    auto* chart_cmd = app.add_subcommand("chart", "Render mean cumulative excess curves from a records CSV");
    chart_cmd->add_option("--csv", csv_path, "records.csv produced by run")->required();
    chart_cmd->add_option("--out", svg_path, "Output SVG path")->required();

    std::string problem = "ski";
    uint64_t seed = 1;
    auto* check_cmd = app.add_subcommand("oracle-check", "Cross-check solvers against brute-force oracles");
    check_cmd->add_option("--problem", problem, "ski or search")
        ->check(CLI::IsMember({"ski", "ski-rental", "search", "online-search"}))
        ->capture_default_str();
    check_cmd->add_option("--seed", seed, "Random seed")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : kExitConfig;
    }

    if (*ski_cmd) return solve_ski(ski);
    if (*search_cmd) return solve_search(search);
    if (*run_cmd) return run(config_path, out_dir, overrides, quiet);
    if (*chart_cmd) return report(uqo_emit_chart(csv_path.c_str(), svg_path.c_str()));
    if (*check_cmd) return oracle_check(problem, seed);
    return kExitInternal;
}

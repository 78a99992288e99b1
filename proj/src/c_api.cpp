#include "uqo/uqo.h"

#include "uqo/chart.hpp"
#include "uqo/checks.hpp"
#include "uqo/config.hpp"
#include "uqo/experiment.hpp"
#include "uqo/online_search.hpp"
#include "uqo/ski_rental.hpp"

#include <algorithm>
#include <cmath>
#include <new>
#include <string>

struct uqo_ski_solution {
    uqo::ski::DrcrSolution value;
};

struct uqo_search_solution {
    uqo::search::SearchDrcrSolution value;
};

struct uqo_config {
    uqo::ExperimentConfig value;
    std::string description;
};

namespace {

thread_local std::string g_last_error;

uqo_status fail(uqo_status status, const std::string& message) {
    g_last_error = message;
    return status;
}

template <class Fn>
uqo_status guarded(Fn&& fn) {
    try {
        fn();
        g_last_error.clear();
        return UQO_OK;
    } catch (const uqo::ConfigError& e) {
        return fail(UQO_ERR_INVALID_CONFIG, e.what());
    } catch (const uqo::IoError& e) {
        return fail(UQO_ERR_IO, e.what());
    } catch (const uqo::SolverError& e) {
        return fail(UQO_ERR_SOLVER, e.what());
    } catch (const std::invalid_argument& e) {
        return fail(UQO_ERR_INVALID_ARGUMENT, e.what());
    } catch (const std::out_of_range& e) {
        return fail(UQO_ERR_INVALID_ARGUMENT, e.what());
    } catch (const std::bad_alloc&) {
        return fail(UQO_ERR_INTERNAL, "out of memory");
    } catch (const std::exception& e) {
        return fail(UQO_ERR_INTERNAL, e.what());
    } catch (...) {
        return fail(UQO_ERR_INTERNAL, "unknown error");
    }
}

void require(const void* p, const char* what) {
    if (!p) throw std::invalid_argument(std::string(what) + " must not be null");
}

uqo::Pip integer_pip(double ell, double u, double delta) {
    const uqo::Pip raw(ell, u, delta);
    const auto top = std::max<std::int64_t>(1, static_cast<std::int64_t>(std::ceil(u)));
    return uqo::clamp_pip_to_integer_range(raw, top);
}

}  // namespace

extern "C" {

const char* uqo_version(void) { return "0.1.0"; }

const char* uqo_last_error(void) { return g_last_error.c_str(); }

uqo_status uqo_ski_solve(double ell, double u, double delta, int64_t buy_cost, uqo_ski_solution** out) {
    return guarded([&] {
        require(out, "out");
        *out = nullptr;
        auto sol = uqo::ski::solve_rsr(integer_pip(ell, u, delta), buy_cost);
        *out = new uqo_ski_solution{std::move(sol)};
    });
}

void uqo_ski_solution_free(uqo_ski_solution* solution) { delete solution; }

uqo_status uqo_ski_solution_summary(const uqo_ski_solution* s, double* eta, double* gamma, double* drcr) {
    return guarded([&] {
        require(s, "solution");
        if (eta) *eta = s->value.eta;
        if (gamma) *gamma = s->value.gamma;
        if (drcr) *drcr = s->value.drcr;
    });
}

size_t uqo_ski_solution_support_size(const uqo_ski_solution* s) { return s ? s->value.policy.support.size() : 0; }

uqo_status uqo_ski_solution_support(const uqo_ski_solution* s, size_t index, int64_t* day, double* mass) {
    return guarded([&] {
        require(s, "solution");
        const auto& p = s->value.policy;
        if (index >= p.support.size()) throw std::out_of_range("support index out of range");
        if (day) *day = p.support[index];
        if (mass) *mass = p.mass[index];
    });
}

uqo_status uqo_ski_deterministic(double ell, double u, double delta, double buy_cost, double* buy_day, double* drcr) {
    return guarded([&] {
        const uqo::Pip pip(ell, u, delta);
        if (buy_day) *buy_day = uqo::ski::dsr_pip_buy_day(pip, buy_cost);
        if (drcr) *drcr = uqo::ski::dsr_pip_drcr(pip, buy_cost);
    });
}

uqo_status uqo_search_solve(double ell, double u, double delta, double m, double M, double eps,
                            uqo_search_solution** out) {
    return guarded([&] {
        require(out, "out");
        *out = nullptr;
        auto sol = uqo::search::solve_pfa(uqo::Pip(ell, u, delta), m, M, eps);
        *out = new uqo_search_solution{std::move(sol)};
    });
}

void uqo_search_solution_free(uqo_search_solution* solution) { delete solution; }

uqo_status uqo_search_solution_summary(const uqo_search_solution* s, double* eta, double* gamma, double* drcr) {
    return guarded([&] {
        require(s, "solution");
        if (eta) *eta = s->value.eta_hat;
        if (gamma) *gamma = s->value.gamma_hat;
        if (drcr) *drcr = s->value.drcr;
    });
}

uqo_status uqo_search_solution_relaxation(const uqo_search_solution* s, double* eta, double* gamma,
                                          double* objective) {
    return guarded([&] {
        require(s, "solution");
        if (eta) *eta = s->value.lp_eta;
        if (gamma) *gamma = s->value.lp_gamma;
        if (objective) *objective = s->value.lp_objective;
    });
}

size_t uqo_search_solution_grid_size(const uqo_search_solution* s) {
    return s ? s->value.protection.grid.values.size() : 0;
}

uqo_status uqo_search_solution_point(const uqo_search_solution* s, size_t index, double* price, double* cumulative) {
    return guarded([&] {
        require(s, "solution");
        const auto& g = s->value.protection;
        if (index >= g.grid.values.size()) throw std::out_of_range("grid index out of range");
        if (price) *price = g.grid.values[index];
        if (cumulative) *cumulative = g.cumulative[index];
    });
}

uqo_status uqo_search_worst_case_alpha(double m, double M, double* alpha) {
    return guarded([&] {
        require(alpha, "alpha");
        *alpha = uqo::search::worst_case_alpha(m, M);
    });
}

uqo_status uqo_config_new(uqo_config** out) {
    return guarded([&] {
        require(out, "out");
        *out = new uqo_config{};
    });
}

uqo_status uqo_config_load(const char* path, uqo_config** out) {
    return guarded([&] {
        require(path, "path");
        require(out, "out");
        *out = nullptr;
        auto cfg = std::make_unique<uqo_config>();
        for (const auto& [key, value] : uqo::read_config_file(path)) uqo::set_config_value(cfg->value, key, value);
        *out = cfg.release();
    });
}

void uqo_config_free(uqo_config* config) { delete config; }

uqo_status uqo_config_set(uqo_config* config, const char* key, const char* value) {
    return guarded([&] {
        require(config, "config");
        require(key, "key");
        require(value, "value");
        uqo::set_config_value(config->value, key, value);
    });
}

size_t uqo_config_key_count(void) { return uqo::config_keys().size(); }

const char* uqo_config_key(size_t index) {
    const auto& keys = uqo::config_keys();
    return index < keys.size() ? keys[index].c_str() : nullptr;
}

const char* uqo_config_describe(uqo_config* config) {
    if (!config) return "";
    config->description = uqo::describe(config->value);
    return config->description.c_str();
}

uqo_status uqo_run_experiment(const uqo_config* config, const char* out_dir, uqo_run_stats* stats) {
    return guarded([&] {
        require(config, "config");
        require(out_dir, "out_dir");
        const auto result = uqo::run_experiment(config->value);
        uqo::write_experiment(result, out_dir);
        if (stats) {
            stats->records = result.records.size();
            stats->lp_solves = result.stats.lp_solves;
            stats->cache_hits = result.stats.cache_hits;
            stats->clip_events = result.stats.clip_events;
        }
    });
}

uqo_status uqo_emit_chart(const char* csv_path, const char* out_path) {
    return guarded([&] {
        require(csv_path, "csv_path");
        require(out_path, "out_path");
        uqo::emit_chart(csv_path, out_path);
    });
}

uqo_status uqo_oracle_check(uqo_problem problem, uint64_t seed, uqo_check_callback callback, void* user,
                            int* all_passed) {
    return guarded([&] {
        const auto p = problem == UQO_ONLINE_SEARCH ? uqo::Problem::OnlineSearch : uqo::Problem::SkiRental;
        const auto results = uqo::run_oracle_checks(p, seed, [&](const uqo::CheckResult& r) {
            if (callback) callback(r.name.c_str(), r.passed ? 1 : 0, r.worst, r.tolerance, r.detail.c_str(), user);
        });
        if (all_passed)
            *all_passed = std::all_of(results.begin(), results.end(), [](const auto& r) { return r.passed; }) ? 1 : 0;
    });
}

}  // extern "C"

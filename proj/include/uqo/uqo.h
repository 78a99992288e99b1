/* C interface to the uqo library. All objects are opaque handles released
 * with the matching *_free function. Functions return a uqo_status; on
 * failure uqo_last_error() describes the most recent error on the calling
 * thread. */
#ifndef UQO_UQO_H
#define UQO_UQO_H

#include <stddef.h>
#include <stdint.h>

#if defined(UQO_BUILDING_LIBRARY)
#define UQO_API __attribute__((visibility("default")))
#else
#define UQO_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum uqo_status {
    UQO_OK = 0,
    UQO_ERR_INVALID_ARGUMENT = 1,
    UQO_ERR_INVALID_CONFIG = 2,
    UQO_ERR_SOLVER = 3,
    UQO_ERR_IO = 4,
    UQO_ERR_INTERNAL = 5
} uqo_status;

typedef enum uqo_problem { UQO_SKI_RENTAL = 0, UQO_ONLINE_SEARCH = 1 } uqo_problem;

UQO_API const char* uqo_version(void);
UQO_API const char* uqo_last_error(void);

/* ---- ski rental ---- */

typedef struct uqo_ski_solution uqo_ski_solution;

/* DRCR-optimal randomized policy for an interval rounded outward to integer days. */
UQO_API uqo_status uqo_ski_solve(double ell, double u, double delta, int64_t buy_cost, uqo_ski_solution** out);
UQO_API void uqo_ski_solution_free(uqo_ski_solution* solution);
UQO_API uqo_status uqo_ski_solution_summary(const uqo_ski_solution* solution, double* eta, double* gamma,
                                            double* drcr);
UQO_API size_t uqo_ski_solution_support_size(const uqo_ski_solution* solution);
/* Writes day and mass of support entry `index`. */
UQO_API uqo_status uqo_ski_solution_support(const uqo_ski_solution* solution, size_t index, int64_t* day,
                                            double* mass);

/* Deterministic continuous-time policy: buy day and its DRCR. */
UQO_API uqo_status uqo_ski_deterministic(double ell, double u, double delta, double buy_cost, double* buy_day,
                                         double* drcr);

/* ---- online search ---- */

typedef struct uqo_search_solution uqo_search_solution;

UQO_API uqo_status uqo_search_solve(double ell, double u, double delta, double m, double M, double eps,
                                    uqo_search_solution** out);
UQO_API void uqo_search_solution_free(uqo_search_solution* solution);
/* Certified consistency, robustness and DRCR of the returned schedule. */
UQO_API uqo_status uqo_search_solution_summary(const uqo_search_solution* solution, double* eta, double* gamma,
                                               double* drcr);
/* Values of the discrete relaxation at the chosen point. */
UQO_API uqo_status uqo_search_solution_relaxation(const uqo_search_solution* solution, double* eta, double* gamma,
                                                  double* objective);
UQO_API size_t uqo_search_solution_grid_size(const uqo_search_solution* solution);
/* Writes price V_k and cumulative sold fraction G_k of grid point `index`. */
UQO_API uqo_status uqo_search_solution_point(const uqo_search_solution* solution, size_t index, double* price,
                                             double* cumulative);
UQO_API uqo_status uqo_search_worst_case_alpha(double m, double M, double* alpha);

/* ---- experiments ---- */

typedef struct uqo_config uqo_config;

UQO_API uqo_status uqo_config_new(uqo_config** out);
UQO_API uqo_status uqo_config_load(const char* path, uqo_config** out);
UQO_API void uqo_config_free(uqo_config* config);
UQO_API uqo_status uqo_config_set(uqo_config* config, const char* key, const char* value);
UQO_API size_t uqo_config_key_count(void);
UQO_API const char* uqo_config_key(size_t index);
/* Renders the effective configuration as `key = value` lines. The returned
 * string stays valid until the next call on this handle. */
UQO_API const char* uqo_config_describe(uqo_config* config);

typedef struct uqo_run_stats {
    uint64_t records;
    uint64_t lp_solves;
    uint64_t cache_hits;
    uint64_t clip_events;
} uqo_run_stats;

/* Runs the experiment and writes records.csv and summary.csv into out_dir.
 * `stats` may be NULL. */
UQO_API uqo_status uqo_run_experiment(const uqo_config* config, const char* out_dir, uqo_run_stats* stats);

UQO_API uqo_status uqo_emit_chart(const char* csv_path, const char* out_path);

/* ---- cross-validation ---- */

typedef void (*uqo_check_callback)(const char* name, int passed, double worst, double tolerance,
                                   const char* detail, void* user);

/* Runs the brute-force suites; *all_passed is 1 when every check passed. */
UQO_API uqo_status uqo_oracle_check(uqo_problem problem, uint64_t seed, uqo_check_callback callback, void* user,
                                    int* all_passed);

#ifdef __cplusplus
}
#endif

#endif /* UQO_UQO_H */

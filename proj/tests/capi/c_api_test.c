/* Exercises the C interface from plain C. */
#include <uqo/uqo.h>

#include <math.h>
#include <stdio.h>
#include <string.h>

static int failures = 0;

#define EXPECT(cond)                                                   \
    do {                                                               \
        if (!(cond)) {                                                 \
            fprintf(stderr, "%s:%d: expected %s\n", __FILE__, __LINE__, #cond); \
            ++failures;                                                \
        }                                                              \
    } while (0)

static void count_checks(const char* name, int passed, double worst, double tolerance, const char* detail,
                         void* user) {
    (void)name, (void)worst, (void)tolerance, (void)detail;
    int* n = (int*)user;
    n[0] += 1;
    n[1] += passed;
}

int main(void) {
    EXPECT(strcmp(uqo_version(), "0.1.0") == 0);

    uqo_ski_solution* ski = NULL;
    EXPECT(uqo_ski_solve(1, 6, 1, 2, &ski) == UQO_OK);
    double eta = 0, gamma = 0, drcr = 0;
    EXPECT(uqo_ski_solution_summary(ski, &eta, &gamma, &drcr) == UQO_OK);
    EXPECT(fabs(drcr - 4.0 / 3.0) < 1e-9);
    EXPECT(uqo_ski_solution_support_size(ski) == 2);
    int64_t day = 0;
    double mass = 0;
    EXPECT(uqo_ski_solution_support(ski, 1, &day, &mass) == UQO_OK);
    EXPECT(day == 2 && fabs(mass - 2.0 / 3.0) < 1e-9);
    EXPECT(uqo_ski_solution_support(ski, 2, &day, &mass) == UQO_ERR_INVALID_ARGUMENT);
    uqo_ski_solution_free(ski);

    /* Real-valued bounds are rounded outward. */
    EXPECT(uqo_ski_solve(1.4, 1.6, 0, 2, &ski) == UQO_OK);
    EXPECT(uqo_ski_solution_summary(ski, NULL, NULL, &drcr) == UQO_OK);
    uqo_ski_solution* exact = NULL;
    EXPECT(uqo_ski_solve(1, 2, 0, 2, &exact) == UQO_OK);
    double drcr_exact = 0;
    uqo_ski_solution_summary(exact, NULL, NULL, &drcr_exact);
    EXPECT(fabs(drcr - drcr_exact) < 1e-12);
    uqo_ski_solution_free(ski);
    uqo_ski_solution_free(exact);

    EXPECT(uqo_ski_solve(3, 2, 0.1, 2, &ski) == UQO_ERR_INVALID_ARGUMENT);
    EXPECT(ski == NULL);
    EXPECT(strstr(uqo_last_error(), "lower bound") != NULL);
    EXPECT(uqo_ski_solve(1, 2, 0.1, 2, NULL) == UQO_ERR_INVALID_ARGUMENT);

    double buy = 0;
    EXPECT(uqo_ski_deterministic(1, 1.5, 0.2, 2, &buy, &drcr) == UQO_OK);
    EXPECT(fabs(buy - 2) < 1e-12 && fabs(drcr - 1.2) < 1e-12);

    uqo_search_solution* search = NULL;
    EXPECT(uqo_search_solve(2, 3, 0.2, 1, 4, 0.05, &search) == UQO_OK);
    EXPECT(uqo_search_solution_summary(search, &eta, &gamma, &drcr) == UQO_OK);
    EXPECT(eta <= gamma && fabs(drcr - (0.8 * eta + 0.2 * gamma)) < 1e-9);
    double lp_obj = 0;
    EXPECT(uqo_search_solution_relaxation(search, NULL, NULL, &lp_obj) == UQO_OK);
    EXPECT(lp_obj <= drcr + 1e-9);
    const size_t k = uqo_search_solution_grid_size(search);
    EXPECT(k > 2);
    double price = 0, cum = 0;
    EXPECT(uqo_search_solution_point(search, k - 1, &price, &cum) == UQO_OK);
    EXPECT(price == 4);
    EXPECT(uqo_search_solution_point(search, k, &price, &cum) == UQO_ERR_INVALID_ARGUMENT);
    uqo_search_solution_free(search);
    EXPECT(uqo_search_solve(0.5, 3, 0.2, 1, 4, 0.05, &search) == UQO_ERR_INVALID_ARGUMENT);

    double alpha = 0;
    EXPECT(uqo_search_worst_case_alpha(1, 4, &alpha) == UQO_OK);
    EXPECT(fabs(alpha - 1.6035457395358360) < 1e-9);

    uqo_config* cfg = NULL;
    EXPECT(uqo_config_new(&cfg) == UQO_OK);
    EXPECT(uqo_config_key_count() == 19);
    EXPECT(strcmp(uqo_config_key(1), "T") == 0);
    EXPECT(uqo_config_key(19) == NULL);
    EXPECT(uqo_config_set(cfg, "T", "abc") == UQO_ERR_INVALID_CONFIG);
    EXPECT(uqo_config_set(cfg, "nope", "1") == UQO_ERR_INVALID_CONFIG);
    EXPECT(uqo_config_set(cfg, "T", "20") == UQO_OK);
    EXPECT(uqo_config_set(cfg, "runs", "1") == UQO_OK);
    EXPECT(strstr(uqo_config_describe(cfg), "T = 20\n") != NULL);
    uqo_config_free(cfg);

    EXPECT(uqo_config_load("/nonexistent/uqo.cfg", &cfg) == UQO_ERR_IO);

    int counts[2] = {0, 0};
    int all = 0;
    EXPECT(uqo_oracle_check(UQO_SKI_RENTAL, 3, count_checks, counts, &all) == UQO_OK);
    EXPECT(counts[0] > 0 && counts[0] == counts[1] && all == 1);

    if (failures) fprintf(stderr, "%d failure(s)\n", failures);
    else printf("c api: all checks passed\n");
    return failures ? 1 : 0;
}

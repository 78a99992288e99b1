#pragma once

#include "uqo/core.hpp"
#include "uqo/lp.hpp"

#include <cstddef>
#include <vector>

namespace uqo::search {

/// Sorted price points with V.front() = m and V.back() = M. Indices are
/// zero-based; values[k_lower] = ℓ and values[k_upper] = u.
struct PriceGrid {
    std::vector<double> values;
    std::size_t k_lower = 0;
    std::size_t k_upper = 0;

    double floor() const { return values.front(); }
    double ceiling() const { return values.back(); }
    bool in_window(std::size_t k) const { return k_lower <= k && k <= k_upper; }
};

/// Piecewise-constant cumulative selling schedule: G(v) = cumulative[k] for
/// v in [V_k, V_{k+1}).
struct ProtectionFunction {
    PriceGrid grid;
    std::vector<double> cumulative;

    double at(double price) const;
    /// Mass q_k = G_k − G_{k−1}, with G_{−1} = 0.
    std::vector<double> masses() const;
};

struct SearchDrcrSolution {
    // Exact consistency, robustness and DRCR of running PFA with `protection`.
    double eta_hat = 0.0;
    double gamma_hat = 0.0;
    double drcr = 0.0;
    ProtectionFunction protection;
    // Values of the discrete relaxation at the chosen point.
    double lp_eta = 0.0;
    double lp_gamma = 0.0;
    double lp_objective = 0.0;
};

enum class InnerMethod { Greedy, Lp };

struct PfaOptions {
    InnerMethod inner = InnerMethod::Greedy;
    double search_tol = 1e-6;
    int fallback_points = 200;
};

double worst_case_alpha(double m, double M);
ProtectionFunction worst_case_protection(double m, double M, double grid_eps);

PriceGrid build_grid(double m, double M, double lower, double upper, double eps);

/// Smallest total mass reaching S_k ≥ a·V_k inside the window and
/// S_k ≥ b·V_k outside it, where S_k = m + Σ_{i≤k}(V_i − m)q_i.
std::vector<double> greedy_masses(const PriceGrid& grid, double a, double b);
double greedy_total_mass(const PriceGrid& grid, double a, double b);

/// Largest b ≤ a keeping the program feasible for consistency 1/a, or a
/// negative value when a itself is infeasible.
double max_inverse_robustness(const PriceGrid& grid, double a, InnerMethod method = InnerMethod::Greedy);

/// f(a) = (1−δ)/a + δ/b*(a); +inf when a is infeasible.
double pfa_objective(const PriceGrid& grid, double delta, double a, InnerMethod method = InnerMethod::Greedy);

SearchDrcrSolution solve_pfa(const Pip& pip, double m, double M, double eps, const PfaOptions& options = {});

struct SearchRatioBounds {
    double eta = 0.0;
    double gamma = 0.0;
    double drcr = 0.0;
};

/// Supremum of OPT/ALG over ramp-then-crash instances, split by whether the
/// peak lies in [ℓ, u].
SearchRatioBounds certified_bounds(const ProtectionFunction& protection, double delta);

/// Largest violation of V_k ≤ r·S_k using the solution's reported eta_hat/gamma_hat.
double pfa_constraint_violation(const SearchDrcrSolution& solution);

RatioSample pfa_run(const ProtectionFunction& protection, const SearchInstance& instance);

/// Geometric ramp of `steps` prices from m to V, then a final price m.
SearchInstance hard_instance(double peak, double m, double M, int steps);

SearchRatioBounds drcr_oracle_search_bounds(const ProtectionFunction& protection, const Pip& pip);
double drcr_oracle_search(const ProtectionFunction& protection, const Pip& pip);

/// Ratio of PFA on the ramp through every grid point up to `peak`, then
/// `peak`, then m. No instance whose maximum price is `peak` does worse.
double ramp_ratio(const ProtectionFunction& protection, double peak);

}  // namespace uqo::search

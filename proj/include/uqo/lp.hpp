#pragma once

#include <limits>
#include <vector>

namespace uqo::lp {

enum class Sense { LessEqual, Equal, GreaterEqual };

struct Row {
    std::vector<double> coefficients;
    Sense sense = Sense::LessEqual;
    double rhs = 0.0;
};

/// minimize objective·x subject to rows and lower ≤ x ≤ upper.
/// Empty bound vectors mean 0 and +inf respectively.
struct LinearProgram {
    std::vector<double> objective;
    std::vector<Row> rows;
    std::vector<double> lower;
    std::vector<double> upper;

    explicit LinearProgram(std::size_t width = 0) : objective(width, 0.0) {}

    std::size_t width() const { return objective.size(); }
    void add_row(std::vector<double> coefficients, Sense sense, double rhs);
    void set_bounds(std::size_t var, double lo, double hi);
    double lower_bound(std::size_t var) const;
    double upper_bound(std::size_t var) const;
};

enum class Status { Optimal, Infeasible, Unbounded };

const char* to_string(Status status);

struct Solution {
    Status status = Status::Infeasible;
    std::vector<double> x;
    double objective_value = 0.0;
    int iterations = 0;
};

struct Options {
    double feasibility_tol = 1e-9;
    double optimality_tol = 1e-9;
    int max_iterations = 200000;
};

/// Two-phase dense tableau simplex with Bland's rule. Throws
/// std::invalid_argument on malformed input.
Solution solve(const LinearProgram& lp, const Options& options = {});

/// Largest constraint violation, each row scaled by max(1, ‖row‖∞).
/// Bound violations are included unscaled.
double max_relative_violation(const LinearProgram& lp, const std::vector<double>& x);

}  // namespace uqo::lp

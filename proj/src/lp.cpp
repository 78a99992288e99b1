#include "uqo/lp.hpp"

#include "uqo/core.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace uqo::lp {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kPivotTol = 1e-11;

// A structural variable x_j = offset + Σ sign·z_col, z ≥ 0.
struct VarMap {
    double offset = 0.0;
    int pos = -1;  // column with sign +1
    int neg = -1;  // column with sign -1
};

class Tableau {
public:
    Tableau(std::vector<std::vector<double>> a, std::vector<double> b, std::vector<int> basis)
        : a_(std::move(a)), b_(std::move(b)), basis_(std::move(basis)) {}

    std::size_t rows() const { return a_.size(); }
    std::size_t cols() const { return a_.empty() ? 0 : a_[0].size(); }
    const std::vector<int>& basis() const { return basis_; }
    double entry(std::size_t r, std::size_t c) const { return a_[r][c]; }
    double rhs(std::size_t r) const { return b_[r]; }

    void pivot(std::size_t r, std::size_t c) {
        const double p = a_[r][c];
        for (double& v : a_[r]) v /= p;
        b_[r] /= p;
        for (std::size_t i = 0; i < rows(); ++i) {
            if (i == r) continue;
            const double f = a_[i][c];
            if (f == 0.0) continue;
            for (std::size_t j = 0; j < cols(); ++j) a_[i][j] -= f * a_[r][j];
            a_[i][c] = 0.0;
            b_[i] -= f * b_[r];
            if (std::abs(b_[i]) < 1e-14) b_[i] = 0.0;
        }
        basis_[r] = static_cast<int>(c);
    }

    enum class Outcome { Optimal, Unbounded };

    // Minimizes cost over columns with allowed[c] true, Bland's rule throughout.
    Outcome optimize(const std::vector<double>& cost, const std::vector<bool>& allowed,
                     const Options& opt, int& iterations) {
        std::vector<double> d(cost);
        for (std::size_t i = 0; i < rows(); ++i) {
            const double cb = cost[basis_[i]];
            if (cb == 0.0) continue;
            for (std::size_t j = 0; j < cols(); ++j) d[j] -= cb * a_[i][j];
        }
        for (;;) {
            if (++iterations > opt.max_iterations)
                throw SolverError("simplex iteration limit exceeded");
            int enter = -1;
            for (std::size_t j = 0; j < cols(); ++j) {
                if (allowed[j] && d[j] < -opt.optimality_tol) {
                    enter = static_cast<int>(j);
                    break;
                }
            }
            if (enter < 0) return Outcome::Optimal;

            int leave = -1;
            double best = kInf;
            for (std::size_t i = 0; i < rows(); ++i) {
                const double t = a_[i][enter];
                if (t <= kPivotTol) continue;
                const double ratio = b_[i] / t;
                if (ratio < best - 1e-12 ||
                    (ratio <= best + 1e-12 && leave >= 0 && basis_[i] < basis_[leave])) {
                    best = std::min(best, ratio);
                    leave = static_cast<int>(i);
                }
            }
            if (leave < 0) return Outcome::Unbounded;

            pivot(static_cast<std::size_t>(leave), static_cast<std::size_t>(enter));
            const double f = d[enter];
            for (std::size_t j = 0; j < cols(); ++j) d[j] -= f * a_[leave][j];
            d[enter] = 0.0;
        }
    }

private:
    std::vector<std::vector<double>> a_;
    std::vector<double> b_;
    std::vector<int> basis_;
};

// Solves m×m system by Gaussian elimination with partial pivoting.
bool solve_dense(std::vector<std::vector<double>> m, std::vector<double> rhs, std::vector<double>& out) {
    const std::size_t n = rhs.size();
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t p = k;
        for (std::size_t i = k + 1; i < n; ++i)
            if (std::abs(m[i][k]) > std::abs(m[p][k])) p = i;
        if (std::abs(m[p][k]) < 1e-13) return false;
        std::swap(m[k], m[p]);
        std::swap(rhs[k], rhs[p]);
        for (std::size_t i = k + 1; i < n; ++i) {
            const double f = m[i][k] / m[k][k];
            if (f == 0.0) continue;
            for (std::size_t j = k; j < n; ++j) m[i][j] -= f * m[k][j];
            rhs[i] -= f * rhs[k];
        }
    }
    out.assign(n, 0.0);
    for (std::size_t k = n; k-- > 0;) {
        double s = rhs[k];
        for (std::size_t j = k + 1; j < n; ++j) s -= m[k][j] * out[j];
        out[k] = s / m[k][k];
    }
    return true;
}

void validate(const LinearProgram& lp) {
    const std::size_t n = lp.width();
    if (n == 0) throw std::invalid_argument("linear program has no variables");
    for (std::size_t i = 0; i < lp.rows.size(); ++i) {
        if (lp.rows[i].coefficients.size() != n)
            throw std::invalid_argument("row " + std::to_string(i) + " width does not match objective");
        if (!std::isfinite(lp.rows[i].rhs))
            throw std::invalid_argument("row " + std::to_string(i) + " has non-finite rhs");
    }
    if (!lp.lower.empty() && lp.lower.size() != n)
        throw std::invalid_argument("lower bound vector width mismatch");
    if (!lp.upper.empty() && lp.upper.size() != n)
        throw std::invalid_argument("upper bound vector width mismatch");
    for (std::size_t j = 0; j < n; ++j) {
        if (lp.lower_bound(j) > lp.upper_bound(j))
            throw std::invalid_argument("variable " + std::to_string(j) + " has lower > upper");
        if (lp.lower_bound(j) == kInf || lp.upper_bound(j) == -kInf)
            throw std::invalid_argument("variable " + std::to_string(j) + " has an empty domain");
    }
}

}  // namespace

void LinearProgram::add_row(std::vector<double> coefficients, Sense sense, double rhs) {
    rows.push_back(Row{std::move(coefficients), sense, rhs});
}

void LinearProgram::set_bounds(std::size_t var, double lo, double hi) {
    if (lower.empty()) lower.assign(width(), 0.0);
    if (upper.empty()) upper.assign(width(), kInf);
    lower.at(var) = lo;
    upper.at(var) = hi;
}

double LinearProgram::lower_bound(std::size_t var) const { return lower.empty() ? 0.0 : lower[var]; }
double LinearProgram::upper_bound(std::size_t var) const { return upper.empty() ? kInf : upper[var]; }

const char* to_string(Status status) {
    switch (status) {
        case Status::Optimal: return "optimal";
        case Status::Infeasible: return "infeasible";
        case Status::Unbounded: return "unbounded";
    }
    return "unknown";
}

Solution solve(const LinearProgram& lp, const Options& options) {
    validate(lp);
    const std::size_t n = lp.width();

    std::vector<VarMap> vars(n);
    int nz = 0;
    std::vector<std::pair<int, double>> upper_rows;  // (column, bound on z)
    for (std::size_t j = 0; j < n; ++j) {
        const double lo = lp.lower_bound(j);
        const double hi = lp.upper_bound(j);
        if (std::isfinite(lo)) {
            vars[j].offset = lo;
            vars[j].pos = nz++;
            if (std::isfinite(hi)) upper_rows.emplace_back(vars[j].pos, hi - lo);
        } else if (std::isfinite(hi)) {
            vars[j].offset = hi;
            vars[j].neg = nz++;
        } else {
            vars[j].pos = nz++;
            vars[j].neg = nz++;
        }
    }

    struct StdRow {
        std::vector<double> a;
        Sense sense;
        double b;
    };
    std::vector<StdRow> rows;
    for (const Row& row : lp.rows) {
        StdRow s{std::vector<double>(nz, 0.0), row.sense, row.rhs};
        for (std::size_t j = 0; j < n; ++j) {
            const double c = row.coefficients[j];
            if (c == 0.0) continue;
            s.b -= c * vars[j].offset;
            if (vars[j].pos >= 0) s.a[vars[j].pos] += c;
            if (vars[j].neg >= 0) s.a[vars[j].neg] -= c;
        }
        rows.push_back(std::move(s));
    }
    for (auto [col, bound] : upper_rows) {
        StdRow s{std::vector<double>(nz, 0.0), Sense::LessEqual, bound};
        s.a[col] = 1.0;
        rows.push_back(std::move(s));
    }
    for (StdRow& s : rows) {
        if (s.b < 0.0) {
            for (double& v : s.a) v = -v;
            s.b = -s.b;
            if (s.sense == Sense::LessEqual) s.sense = Sense::GreaterEqual;
            else if (s.sense == Sense::GreaterEqual) s.sense = Sense::LessEqual;
        }
    }

    const std::size_t m = rows.size();
    std::size_t n_slack = 0, n_art = 0;
    for (const StdRow& s : rows) {
        if (s.sense != Sense::Equal) ++n_slack;
        if (s.sense != Sense::LessEqual) ++n_art;
    }
    const std::size_t ncols = nz + n_slack + n_art;
    const std::size_t art_begin = nz + n_slack;

    std::vector<std::vector<double>> a(m, std::vector<double>(ncols, 0.0));
    std::vector<double> b(m);
    std::vector<int> basis(m);
    std::size_t next_slack = nz, next_art = art_begin;
    for (std::size_t i = 0; i < m; ++i) {
        std::copy(rows[i].a.begin(), rows[i].a.end(), a[i].begin());
        b[i] = rows[i].b;
        switch (rows[i].sense) {
            case Sense::LessEqual:
                a[i][next_slack] = 1.0;
                basis[i] = static_cast<int>(next_slack++);
                break;
            case Sense::GreaterEqual:
                a[i][next_slack++] = -1.0;
                a[i][next_art] = 1.0;
                basis[i] = static_cast<int>(next_art++);
                break;
            case Sense::Equal:
                a[i][next_art] = 1.0;
                basis[i] = static_cast<int>(next_art++);
                break;
        }
    }
    const auto a0 = a;
    const auto b0 = b;

    Tableau tab(std::move(a), std::move(b), std::move(basis));
    Solution sol;

    if (n_art > 0) {
        std::vector<double> cost(ncols, 0.0);
        for (std::size_t j = art_begin; j < ncols; ++j) cost[j] = 1.0;
        std::vector<bool> allowed(ncols, true);
        tab.optimize(cost, allowed, options, sol.iterations);
        double infeas = 0.0, scale = 1.0;
        for (std::size_t i = 0; i < m; ++i) {
            scale = std::max(scale, b0[i]);
            if (static_cast<std::size_t>(tab.basis()[i]) >= art_begin) infeas += tab.rhs(i);
        }
        if (infeas > options.feasibility_tol * scale) {
            sol.status = Status::Infeasible;
            return sol;
        }
        // Drive remaining (zero-valued) artificials out of the basis; rows with
        // no eligible pivot are redundant and stay inert.
        for (std::size_t i = 0; i < m; ++i) {
            if (static_cast<std::size_t>(tab.basis()[i]) < art_begin) continue;
            for (std::size_t j = 0; j < art_begin; ++j) {
                if (std::abs(tab.entry(i, j)) > 1e-9) {
                    tab.pivot(i, j);
                    break;
                }
            }
        }
    }

    std::vector<double> cost(ncols, 0.0);
    for (std::size_t j = 0; j < n; ++j) {
        const double c = lp.objective[j];
        if (vars[j].pos >= 0) cost[vars[j].pos] += c;
        if (vars[j].neg >= 0) cost[vars[j].neg] -= c;
    }
    std::vector<bool> allowed(ncols, true);
    for (std::size_t j = art_begin; j < ncols; ++j) allowed[j] = false;
    if (tab.optimize(cost, allowed, options, sol.iterations) == Tableau::Outcome::Unbounded) {
        sol.status = Status::Unbounded;
        return sol;
    }

    // Recompute the basic solution from the original matrix to shed
    // accumulated pivoting error.
    std::vector<double> z(ncols, 0.0);
    {
        std::vector<std::vector<double>> bm(m, std::vector<double>(m));
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t k = 0; k < m; ++k) bm[i][k] = a0[i][tab.basis()[k]];
        std::vector<double> xb;
        if (m > 0 && solve_dense(bm, b0, xb)) {
            for (std::size_t k = 0; k < m; ++k) z[tab.basis()[k]] = xb[k];
        } else {
            for (std::size_t k = 0; k < m; ++k) z[tab.basis()[k]] = tab.rhs(k);
        }
    }
    for (double& v : z)
        if (v < 0.0 && v > -1e-7) v = 0.0;

    sol.x.assign(n, 0.0);
    for (std::size_t j = 0; j < n; ++j) {
        double v = vars[j].offset;
        if (vars[j].pos >= 0) v += z[vars[j].pos];
        if (vars[j].neg >= 0) v -= z[vars[j].neg];
        sol.x[j] = std::clamp(v, lp.lower_bound(j), lp.upper_bound(j));
    }
    sol.objective_value = 0.0;
    for (std::size_t j = 0; j < n; ++j) sol.objective_value += lp.objective[j] * sol.x[j];
    sol.status = Status::Optimal;
    return sol;
}

double max_relative_violation(const LinearProgram& lp, const std::vector<double>& x) {
    if (x.size() != lp.width()) throw std::invalid_argument("point width mismatch");
    double worst = 0.0;
    for (const Row& row : lp.rows) {
        double lhs = 0.0, norm = 1.0;
        for (std::size_t j = 0; j < x.size(); ++j) {
            lhs += row.coefficients[j] * x[j];
            norm = std::max(norm, std::abs(row.coefficients[j]));
        }
        double v = 0.0;
        switch (row.sense) {
            case Sense::LessEqual: v = lhs - row.rhs; break;
            case Sense::GreaterEqual: v = row.rhs - lhs; break;
            case Sense::Equal: v = std::abs(lhs - row.rhs); break;
        }
        worst = std::max(worst, v / norm);
    }
    for (std::size_t j = 0; j < x.size(); ++j) {
        worst = std::max(worst, lp.lower_bound(j) - x[j]);
        worst = std::max(worst, x[j] - lp.upper_bound(j));
    }
    return worst;
}

}  // namespace uqo::lp

#pragma once

#include "uqo/core.hpp"
#include "uqo/online_search.hpp"
#include "uqo/ski_rental.hpp"

#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <utility>
#include <vector>

namespace uqo::learn {

/// Exponentiated gradient over n experts with full-information linear losses.
/// Weights are kept in log space so they stay positive and finite.
class EgLearner {
public:
    EgLearner(std::size_t n_experts, double step_size, double loss_bound);

    std::size_t size() const { return log_weights_.size(); }
    double step_size() const { return step_size_; }
    double loss_bound() const { return loss_bound_; }
    std::size_t rounds() const { return rounds_; }
    std::size_t clip_count() const { return clip_count_; }

    std::vector<double> decide() const;
    void update(const std::vector<double>& losses) { update(losses, step_size_); }
    /// Same as update() but with an explicit step for this round.
    void update(const std::vector<double>& losses, double step);

private:
    std::vector<double> log_weights_;
    double step_size_;
    double loss_bound_;
    std::size_t rounds_ = 0;
    std::size_t clip_count_ = 0;
};

/// sqrt(ln n_ctx) / (loss_bound · sqrt(2T)).
double eg_step(std::int64_t horizon, double loss_bound, std::int64_t n_ctx);
EgLearner eg_init(std::size_t n_experts, std::int64_t horizon, double loss_bound, std::int64_t n_ctx);

enum class StepSchedule {
    FixedHorizon,  // scale · eg_step(T, L, n)
    Anytime,       // scale · eg_step(t + 1, L, n) on the learner's (t+1)-th update
};

struct StepRule {
    StepSchedule schedule = StepSchedule::FixedHorizon;
    double scale = 1.0;
    std::int64_t horizon = 1;
    double loss_bound = 1.0;
    std::int64_t n_ctx = 1;

    double at(std::size_t prior_updates) const;
};

/// Centers with one learner each. A point joins the nearest center when it
/// lies within the radius and founds a new center otherwise.
class EpsilonNet {
public:
    explicit EpsilonNet(double radius);

    double radius() const { return radius_; }
    std::size_t size() const { return centers_.size(); }
    const std::vector<double>& center(std::size_t i) const { return centers_[i]; }
    EgLearner& learner(std::size_t i) { return learners_[i]; }
    const EgLearner& learner(std::size_t i) const { return learners_[i]; }

    std::size_t lookup_or_insert(const std::vector<double>& coords, const std::function<EgLearner()>& factory);

private:
    double radius_;
    std::vector<std::vector<double>> centers_;
    std::vector<EgLearner> learners_;
};

struct RoundLog {
    std::size_t t = 0;
    Pip theta{0.0, 0.0, 0.0};
    double expected_ratio = 0.0;
    double sampled_ratio = 0.0;
    double benchmark = 0.0;
    std::size_t learner_key = 0;
};

struct RegretSeries {
    std::vector<double> cumulative_regret;
    std::vector<double> running_excess;
};

RegretSeries policy_regret(const std::vector<RoundLog>& history);

/// Ski-rental losses: ratio of buying on each day 1..n_bar.
double ski_loss_bound(std::int64_t n_bar, std::int64_t buy_cost);

struct SkiRoundResult {
    ski::PurchaseDistribution policy;
    RoundLog log;
};

class OlDynamicSki {
public:
    /// radius <= 0 selects T^{-1/3}.
    OlDynamicSki(std::int64_t n_bar, std::int64_t buy_cost, std::int64_t horizon, double step_scale,
                 StepSchedule schedule, double radius = 0.0);

    /// `draw` in [0, 1) picks the sampled buy day.
    SkiRoundResult round(const Pip& pip, const SkiInstance& instance, double benchmark, double draw);

    std::size_t learner_count() const { return learner_count_; }
    std::size_t clip_count() const;
    double radius() const { return radius_; }
    const StepRule& step_rule() const { return rule_; }

private:
    struct Cell {
        EpsilonNet net;
        std::vector<std::size_t> keys;
    };

    std::int64_t n_bar_;
    std::int64_t buy_cost_;
    double radius_;
    StepRule rule_;
    std::map<std::pair<std::int64_t, std::int64_t>, Cell> cells_;
    std::size_t learner_count_ = 0;
    std::size_t t_ = 0;
};

class OlStaticSki {
public:
    OlStaticSki(std::int64_t n_bar, std::int64_t buy_cost, std::int64_t horizon, double step_scale,
                StepSchedule schedule = StepSchedule::FixedHorizon);

    SkiRoundResult round(const Pip& pip, const SkiInstance& instance, double benchmark, double draw);
    const EgLearner& learner() const { return learner_; }

private:
    std::int64_t n_bar_;
    std::int64_t buy_cost_;
    StepRule rule_;
    EgLearner learner_;
    std::size_t t_ = 0;
};

/// Expert prices Λ₁ ∪ Λ₂ and the rounding used for online search.
struct SearchDiscretization {
    double m = 1.0;
    double M = 1.0;
    double epsilon = 0.0;
    double lambda1 = 0.0;
    double lambda2 = 0.0;
    std::vector<double> experts;

    /// epsilon = min{(M/m)^(-2/5), 1} · T^(-1/5).
    static SearchDiscretization make(double m, double M, std::int64_t horizon);
    static SearchDiscretization from_epsilon(double m, double M, double epsilon);
    double round_down(double x) const;
    double round_up(double x) const;
};

/// Profit of selling the whole unit at the first price reaching `threshold`
/// (or at the final price if none does).
double threshold_profit(double threshold, const SearchInstance& instance);

struct SearchRoundResult {
    search::ProtectionFunction protection;
    RoundLog log;
};

class OlSearchLearner {
public:
    /// dynamic = false ignores the prediction and keeps one learner.
    OlSearchLearner(double m, double M, std::int64_t horizon, double step_scale, StepSchedule schedule, bool dynamic);

    SearchRoundResult round(const Pip& pip, const SearchInstance& instance, double benchmark);

    const SearchDiscretization& discretization() const { return disc_; }
    std::size_t learner_count() const { return learner_count_; }
    std::size_t clip_count() const;

private:
    struct Cell {
        EpsilonNet net;
        std::vector<std::size_t> keys;
    };

    SearchDiscretization disc_;
    bool dynamic_;
    StepRule rule_;
    std::map<std::pair<double, double>, Cell> cells_;
    std::size_t learner_count_ = 0;
    std::size_t t_ = 0;
};

}  // namespace uqo::learn

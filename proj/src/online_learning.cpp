#include "uqo/online_learning.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace uqo::learn {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double distance(const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += (a[i] - b[i]) * (a[i] - b[i]);
    return std::sqrt(s);
}

double dot(const std::vector<double>& a, const std::vector<double>& b) {
    return std::inner_product(a.begin(), a.end(), b.begin(), 0.0);
}

}  // namespace

EgLearner::EgLearner(std::size_t n_experts, double step_size, double loss_bound)
    : log_weights_(n_experts, 0.0), step_size_(step_size), loss_bound_(loss_bound) {
    if (n_experts == 0) throw std::invalid_argument("learner needs at least one expert");
    if (!(step_size >= 0.0) || !std::isfinite(step_size)) throw std::invalid_argument("step size must be finite and nonnegative");
    if (!(loss_bound > 0.0)) throw std::invalid_argument("loss bound must be positive");
}

std::vector<double> EgLearner::decide() const {
    const double top = *std::max_element(log_weights_.begin(), log_weights_.end());
    std::vector<double> w(log_weights_.size());
    double total = 0.0;
    for (std::size_t i = 0; i < w.size(); ++i) total += (w[i] = std::exp(log_weights_[i] - top));
    for (double& x : w) x /= total;
    return w;
}

void EgLearner::update(const std::vector<double>& losses, double step) {
    if (losses.size() != log_weights_.size()) throw std::invalid_argument("loss vector length mismatch");
    for (std::size_t i = 0; i < losses.size(); ++i) {
        double loss = losses[i];
        if (!(loss >= 0.0 && loss <= loss_bound_)) {
            loss = std::isnan(loss) ? loss_bound_ : std::clamp(loss, 0.0, loss_bound_);
            ++clip_count_;
        }
        log_weights_[i] -= step * loss;
    }
    const double top = *std::max_element(log_weights_.begin(), log_weights_.end());
    for (double& x : log_weights_) x -= top;
    ++rounds_;
}

double eg_step(std::int64_t horizon, double loss_bound, std::int64_t n_ctx) {
    if (horizon < 1) throw std::invalid_argument("horizon must be at least 1");
    if (n_ctx < 1) throw std::invalid_argument("expert count must be at least 1");
    if (!(loss_bound > 0.0)) throw std::invalid_argument("loss bound must be positive");
    return std::sqrt(std::log(static_cast<double>(n_ctx))) / (loss_bound * std::sqrt(2.0 * static_cast<double>(horizon)));
}

EgLearner eg_init(std::size_t n_experts, std::int64_t horizon, double loss_bound, std::int64_t n_ctx) {
    return EgLearner(n_experts, eg_step(horizon, loss_bound, n_ctx), loss_bound);
}

double StepRule::at(std::size_t prior_updates) const {
    const auto t = schedule == StepSchedule::FixedHorizon ? horizon : static_cast<std::int64_t>(prior_updates) + 1;
    return scale * eg_step(t, loss_bound, n_ctx);
}

EpsilonNet::EpsilonNet(double radius) : radius_(radius) {
    if (!(radius > 0.0)) throw std::invalid_argument("net radius must be positive");
}

std::size_t EpsilonNet::lookup_or_insert(const std::vector<double>& coords, const std::function<EgLearner()>& factory) {
    std::size_t best = centers_.size();
    double best_d = kInf;
    for (std::size_t i = 0; i < centers_.size(); ++i) {
        if (centers_[i].size() != coords.size()) throw std::invalid_argument("coordinate dimension mismatch");
        const double d = distance(centers_[i], coords);
        if (d < best_d) best = i, best_d = d;
    }
    if (best < centers_.size() && best_d <= radius_) return best;
    centers_.push_back(coords);
    learners_.push_back(factory());
    return centers_.size() - 1;
}

RegretSeries policy_regret(const std::vector<RoundLog>& history) {
    RegretSeries out;
    double regret = 0.0, sum = 0.0;
    for (std::size_t i = 0; i < history.size(); ++i) {
        regret += history[i].expected_ratio - history[i].benchmark;
        sum += history[i].expected_ratio;
        out.cumulative_regret.push_back(regret);
        out.running_excess.push_back(sum / static_cast<double>(i + 1) - 1.0);
    }
    return out;
}

double ski_loss_bound(std::int64_t n_bar, std::int64_t buy_cost) {
    const double b = static_cast<double>(buy_cost);
    return std::max((static_cast<double>(n_bar) + b) / b, b);
}

namespace {

void check_ski_round(const Pip& pip, const SkiInstance& instance, std::int64_t n_bar, std::int64_t buy_cost) {
    if (!has_integer_bounds(pip) || pip.lower() < 1.0 || pip.upper() > static_cast<double>(n_bar))
        throw std::invalid_argument("pip must be clamped to integer days in [1, n_bar]");
    if (instance.buy_cost != buy_cost) throw std::invalid_argument("instance buy cost differs from the learner's");
}

SkiRoundResult play_ski(EgLearner& learner, const StepRule& rule, const Pip& pip, const SkiInstance& instance,
                        std::int64_t n_bar, double benchmark, double draw, std::size_t t, std::size_t key) {
    SkiRoundResult out;
    const auto y = learner.decide();
    const auto losses = ski::day_ratios(n_bar, instance);
    for (std::int64_t d = 1; d <= n_bar; ++d) {
        out.policy.support.push_back(d);
        out.policy.mass.push_back(y[d - 1]);
    }
    const auto day = out.policy.sample(draw);
    out.log.t = t;
    out.log.theta = pip;
    out.log.expected_ratio = dot(losses, y);
    out.log.sampled_ratio = losses[day - 1];
    out.log.benchmark = benchmark;
    out.log.learner_key = key;
    learner.update(losses, rule.at(learner.rounds()));
    return out;
}

}  // namespace

OlDynamicSki::OlDynamicSki(std::int64_t n_bar, std::int64_t buy_cost, std::int64_t horizon, double step_scale,
                           StepSchedule schedule, double radius)
    : n_bar_(n_bar), buy_cost_(buy_cost) {
    if (n_bar < 1 || buy_cost < 1 || horizon < 1) throw std::invalid_argument("invalid ski learner dimensions");
    radius_ = radius > 0.0 ? radius : std::pow(static_cast<double>(horizon), -1.0 / 3.0);
    rule_ = StepRule{schedule, step_scale, horizon, ski_loss_bound(n_bar, buy_cost), n_bar};
}

SkiRoundResult OlDynamicSki::round(const Pip& pip, const SkiInstance& instance, double benchmark, double draw) {
    check_ski_round(pip, instance, n_bar_, buy_cost_);
    const std::pair key{static_cast<std::int64_t>(pip.lower()), static_cast<std::int64_t>(pip.upper())};
    auto it = cells_.find(key);
    if (it == cells_.end()) it = cells_.emplace(key, Cell{EpsilonNet(radius_), {}}).first;
    Cell& cell = it->second;
    const auto idx = cell.net.lookup_or_insert(
        {pip.delta()}, [&] { return EgLearner(static_cast<std::size_t>(n_bar_), rule_.at(0), rule_.loss_bound); });
    if (idx == cell.keys.size()) cell.keys.push_back(learner_count_++);
    return play_ski(cell.net.learner(idx), rule_, pip, instance, n_bar_, benchmark, draw, ++t_, cell.keys[idx]);
}

std::size_t OlDynamicSki::clip_count() const {
    std::size_t n = 0;
    for (const auto& [key, cell] : cells_)
        for (std::size_t i = 0; i < cell.net.size(); ++i) n += cell.net.learner(i).clip_count();
    return n;
}

OlStaticSki::OlStaticSki(std::int64_t n_bar, std::int64_t buy_cost, std::int64_t horizon, double step_scale,
                         StepSchedule schedule)
    : n_bar_(n_bar),
      buy_cost_(buy_cost),
      rule_{schedule, step_scale, horizon, ski_loss_bound(n_bar, buy_cost), n_bar},
      learner_(static_cast<std::size_t>(n_bar), rule_.at(0), rule_.loss_bound) {}

SkiRoundResult OlStaticSki::round(const Pip& pip, const SkiInstance& instance, double benchmark, double draw) {
    check_ski_round(pip, instance, n_bar_, buy_cost_);
    return play_ski(learner_, rule_, pip, instance, n_bar_, benchmark, draw, ++t_, 0);
}

SearchDiscretization SearchDiscretization::make(double m, double M, std::int64_t horizon) {
    if (horizon < 1) throw std::invalid_argument("horizon must be at least 1");
    const double eps = std::min(std::pow(M / m, -0.4), 1.0) * std::pow(static_cast<double>(horizon), -0.2);
    return from_epsilon(m, M, eps);
}

SearchDiscretization SearchDiscretization::from_epsilon(double m, double M, double epsilon) {
    if (!(m > 0.0 && M > m)) throw std::invalid_argument("need 0 < m < M");
    if (!(epsilon > 0.0)) throw std::invalid_argument("epsilon must be positive");
    SearchDiscretization d;
    d.m = m;
    d.M = M;
    d.epsilon = epsilon;
    d.lambda1 = epsilon * std::min(M / m - 1.0, 1.0);
    d.lambda2 = epsilon * (M - m);
    std::vector<double> raw;
    for (double v = m; v <= M; v *= 1.0 + d.lambda1) raw.push_back(v);
    for (long j = 0;; ++j) {
        const double v = m + static_cast<double>(j) * d.lambda2;
        if (v > M * (1.0 + 1e-12)) break;
        raw.push_back(std::min(v, M));
    }
    raw.push_back(M);
    std::sort(raw.begin(), raw.end());
    for (double v : raw)
        if (d.experts.empty() || v - d.experts.back() > 1e-12 * v) d.experts.push_back(v);
    d.experts.back() = M;
    return d;
}

double SearchDiscretization::round_down(double x) const {
    const double j = std::floor((x - m) / lambda2 + 1e-9);
    return std::clamp(m + std::max(j, 0.0) * lambda2, m, M);
}

double SearchDiscretization::round_up(double x) const {
    const double j = std::ceil((x - m) / lambda2 - 1e-9);
    return std::clamp(m + std::max(j, 0.0) * lambda2, m, M);
}

double threshold_profit(double threshold, const SearchInstance& instance) {
    const auto& p = instance.prices;
    for (std::size_t n = 0; n + 1 < p.size(); ++n)
        if (p[n] >= threshold) return p[n];
    return p.back();
}

OlSearchLearner::OlSearchLearner(double m, double M, std::int64_t horizon, double step_scale, StepSchedule schedule,
                                 bool dynamic)
    : disc_(SearchDiscretization::make(m, M, horizon)), dynamic_(dynamic) {
    rule_ = StepRule{schedule, step_scale, horizon, M / m, static_cast<std::int64_t>(disc_.experts.size())};
}

SearchRoundResult OlSearchLearner::round(const Pip& pip, const SearchInstance& instance, double benchmark) {
    const double m = disc_.m, M = disc_.M;
    if (!(pip.lower() >= m && pip.upper() <= M)) throw std::invalid_argument("pip outside [m, M]");
    if (instance.price_floor != m || instance.price_ceiling != M)
        throw std::invalid_argument("instance bounds differ from the learner's");

    const double lo = dynamic_ ? disc_.round_down(pip.lower()) : m;
    const double hi = dynamic_ ? disc_.round_up(pip.upper()) : M;
    auto it = cells_.find({lo, hi});
    if (it == cells_.end())
        it = cells_.emplace(std::pair{lo, hi}, Cell{EpsilonNet(dynamic_ ? disc_.epsilon : kInf), {}}).first;
    Cell& cell = it->second;
    const std::size_t n = disc_.experts.size();
    const auto idx = cell.net.lookup_or_insert({dynamic_ ? pip.delta() : 0.0},
                                               [&] { return EgLearner(n, rule_.at(0), rule_.loss_bound); });
    if (idx == cell.keys.size()) cell.keys.push_back(learner_count_++);
    EgLearner& learner = cell.net.learner(idx);

    const auto w = learner.decide();
    std::vector<double> profits(n);
    for (std::size_t j = 0; j < n; ++j) profits[j] = threshold_profit(disc_.experts[j], instance);
    const double alg = dot(w, profits);
    const double opt = instance.max_price();

    SearchRoundResult out;
    auto& g = out.protection;
    g.grid.values = disc_.experts;
    const auto& ex = disc_.experts;
    g.grid.k_lower = static_cast<std::size_t>(std::lower_bound(ex.begin(), ex.end(), lo * (1.0 - 1e-12)) - ex.begin());
    g.grid.k_upper = static_cast<std::size_t>(std::lower_bound(ex.begin(), ex.end(), hi * (1.0 - 1e-12)) - ex.begin());
    g.grid.k_upper = std::min(g.grid.k_upper, n - 1);
    double acc = 0.0;
    for (double x : w) g.cumulative.push_back(acc = std::min(1.0, acc + x));

    out.log.t = ++t_;
    out.log.theta = pip;
    out.log.expected_ratio = opt / alg;
    out.log.sampled_ratio = out.log.expected_ratio;
    out.log.benchmark = benchmark;
    out.log.learner_key = cell.keys[idx];

    // Subgradient of OPT/ALG(q), shifted to be nonnegative (EG ignores shifts).
    std::vector<double> grad(n);
    for (std::size_t j = 0; j < n; ++j) grad[j] = -opt * profits[j] / (alg * alg);
    const double lowest = *std::min_element(grad.begin(), grad.end());
    for (double& x : grad) x -= lowest;
    learner.update(grad, rule_.at(learner.rounds()));
    return out;
}

std::size_t OlSearchLearner::clip_count() const {
    std::size_t n = 0;
    for (const auto& [key, cell] : cells_)
        for (std::size_t i = 0; i < cell.net.size(); ++i) n += cell.net.learner(i).clip_count();
    return n;
}

}  // namespace uqo::learn

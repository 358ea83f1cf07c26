// Copyright 2026 The advalloc Authors. All rights reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "advalloc/train.hpp"

#include <algorithm>
#include <deque>
#include <string>

#include "advalloc/error.hpp"
#include "advalloc/grad.hpp"

namespace advalloc {
namespace {

class TrailingMean {
 public:
  explicit TrailingMean(std::size_t window) : window_(window) {}

  void add(double x) {
    values_.push_back(x);
    sum_ += x;
    if (values_.size() > window_) {
      sum_ -= values_.front();
      values_.pop_front();
    }
  }
  double mean() const { return values_.empty() ? 0.0 : sum_ / values_.size(); }

 private:
  std::size_t window_;
  std::deque<double> values_;
  double sum_ = 0.0;
};

// Per-iteration bookkeeping shared by the three training modes.
class Recorder {
 public:
  Recorder(const TrainConfig& tcfg, const MetricsSink& sink, TrainResult& result)
      : tcfg_(tcfg), sink_(sink), result_(result),
        trailing_(static_cast<std::size_t>(tcfg.trailing_window)) {}

  void episode(Money gap, Money welfare) {
    gap_sum_ += static_cast<double>(gap);
    welfare_sum_ += static_cast<double>(welfare);
    ++count_;
    ++episodes_;
    trailing_.add(static_cast<double>(gap));
  }

  void end_iteration(long iteration) {
    MetricsRow row;
    row.iteration = iteration;
    row.episodes = episodes_;
    row.mean_gap = count_ ? gap_sum_ / count_ : 0.0;
    row.mean_welfare = count_ ? welfare_sum_ / count_ : 0.0;
    row.trailing_avg_gap = trailing_.mean();
    result_.metrics.push_back(row);
    if (sink_) sink_(row);
    gap_sum_ = welfare_sum_ = 0.0;
    count_ = 0;
  }

  long episodes() const { return episodes_; }

 private:
  const TrainConfig& tcfg_;
  const MetricsSink& sink_;
  TrainResult& result_;
  TrailingMean trailing_;
  double gap_sum_ = 0.0;
  double welfare_sum_ = 0.0;
  long count_ = 0;
  long episodes_ = 0;
};

TrainResult make_result(const GameConfig& cfg, const TrainConfig& tcfg) {
  MlpPolicy alg = MlpPolicy::algorithm(cfg, tcfg.net);
  MlpPolicy adv = MlpPolicy::adversary(cfg, tcfg.net);
  Rng init_alg = derive_rng(tcfg.seed, "init-alg");
  Rng init_adv = derive_rng(tcfg.seed, "init-adv");
  alg.initialize(init_alg);
  adv.initialize(init_adv);
  SnapshotRing alg_ring(alg.shape(), tcfg.snapshot_window);
  SnapshotRing adv_ring(adv.shape(), tcfg.snapshot_window);
  return TrainResult{std::move(alg), std::move(adv), std::move(alg_ring),
                     std::move(adv_ring), {}, {}};
}

void accumulate_alg_gradient(const GameConfig& cfg, const MlpPolicy& alg,
                             const BudgetSequence& budgets, const Rollout& roll,
                             std::vector<double>& grad) {
  for (std::size_t slot = 0; slot < budgets.size(); ++slot) {
    const ProbGradient g =
        alg_prob_gradient(cfg, budgets, static_cast<int>(slot), roll.accepted);
    if (std::all_of(g.per_action.begin(), g.per_action.end(),
                    [](double v) { return v == 0.0; })) {
      continue;
    }
    backprop(alg, roll.tapes[slot], g.per_action, grad);
  }
}

void accumulate_adv_gradient(const GameConfig& cfg, const MlpPolicy& adv,
                             const AdversarySample& sample,
                             const PriceSequence& prices, std::vector<double>& grad) {
  const std::size_t m = cfg.budget_set.size();
  std::vector<double> on_probs(sample.budgets.size() * m, 0.0);
  for (std::size_t slot = 0; slot < sample.budgets.size(); ++slot) {
    const ProbGradient g =
        adv_prob_gradient(cfg, prices, sample.budgets, static_cast<int>(slot));
    std::copy(g.per_action.begin(), g.per_action.end(),
              on_probs.begin() + static_cast<long>(slot * m));
  }
  backprop(adv, sample.tape, on_probs, grad);
}

void check_strategies_nonempty(std::size_t count) {
  if (count == 0) throw InvalidInput("the pure strategy list must not be empty");
}

}  // namespace

void TrainConfig::validate() const {
  if (xi < 1) throw InvalidInput("xi must be at least 1");
  if (batch < 1) throw InvalidInput("batch must be at least 1");
  if (episodes < 0) throw InvalidInput("episodes must be non-negative");
  if (lr_alg < 0.0 || lr_adv < 0.0) throw InvalidInput("learning rates must be non-negative");
  if (snapshot_window < 1) throw InvalidInput("snapshot window must be positive");
  if (mw_rollouts < 1) throw InvalidInput("mw_rollouts must be positive");
  if (mw_eta < 0.0) throw InvalidInput("mw_eta must be non-negative");
  if (trailing_window < 1) throw InvalidInput("trailing window must be positive");
}

Rollout play_algorithm(const GameConfig& cfg, const MlpPolicy& alg,
                       const BudgetSequence& budgets, Rng& rng, bool keep_tapes,
                       Decode decode) {
  const std::size_t n = budgets.size();
  if (n > static_cast<std::size_t>(cfg.n_users)) {
    throw InvalidInput("budget sequence is longer than n_users");
  }
  Rollout roll;
  roll.prices.values().resize(n);
  roll.accepted.assign(n, false);
  if (keep_tapes) roll.tapes.resize(n);
  std::vector<StepFeatures> history;
  history.reserve(n);
  ForwardTape scratch;
  int available = cfg.n_resources;
  Money last_budget = 0;
  Money last_price = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const StepFeatures current =
        make_step_features(cfg, static_cast<int>(i), available, last_budget, last_price);
    ForwardTape* tape = keep_tapes ? &roll.tapes[i] : &scratch;
    const std::vector<double> probs = alg_forward(alg, history, current, tape);
    const std::size_t choice =
        decode == Decode::kSample
            ? sample_categorical(rng, probs)
            : static_cast<std::size_t>(std::max_element(probs.begin(), probs.end()) -
                                       probs.begin());
    const Money price = cfg.price_set[choice];
    roll.prices[i] = price;
    if (available > 0 && budgets[i] >= price) {
      roll.accepted[i] = true;
      roll.welfare += budgets[i];
      --available;
    }
    history.push_back(current);
    last_budget = budgets[i];
    last_price = price;
  }
  roll.benchmark = kernel::top_sum(budgets.view(), cfg.n_resources);
  roll.gap = roll.benchmark - roll.welfare;
  return roll;
}

AdversarySample sample_adversary(const GameConfig& cfg, const MlpPolicy& adv, Rng& rng) {
  AdversarySample sample;
  const std::vector<double> latent = sample_latent(rng, adv.shape().input_dim);
  const std::vector<double> probs = adv_forward(adv, latent, &sample.tape);
  const std::size_t m = cfg.budget_set.size();
  const std::size_t heads = static_cast<std::size_t>(adv.shape().num_heads);
  sample.budgets.values().resize(heads);
  for (std::size_t h = 0; h < heads; ++h) {
    const std::span<const double> head(probs.data() + h * m, m);
    sample.budgets[h] = cfg.budget_set[sample_categorical(rng, head)];
  }
  return sample;
}

std::vector<BudgetSequence> prefix_strategies(const BudgetSequence& sequence) {
  std::vector<BudgetSequence> out;
  for (std::size_t len = 1; len <= sequence.size(); ++len) {
    out.emplace_back(std::vector<Money>(sequence.begin(), sequence.begin() + static_cast<long>(len)));
  }
  return out;
}

std::vector<double> expected_gaps_vs_algorithm(
    const GameConfig& cfg, const MlpPolicy& alg,
    const std::vector<BudgetSequence>& strategies, int rollouts, Rng& rng,
    const SnapshotRing* ring, Decode decode) {
  check_strategies_nonempty(strategies.size());
  const std::size_t count = strategies.size();
  // carrier[s]: the longest strategy that has s as a prefix.
  std::vector<std::size_t> carrier(count);
  for (std::size_t s = 0; s < count; ++s) {
    carrier[s] = s;
    for (std::size_t t = 0; t < count; ++t) {
      const auto& a = strategies[s].values();
      const auto& b = strategies[t].values();
      if (b.size() > strategies[carrier[s]].size() &&
          std::equal(a.begin(), a.end(), b.begin())) {
        carrier[s] = t;
      }
    }
  }
  std::vector<std::size_t> carriers(carrier);
  std::sort(carriers.begin(), carriers.end());
  carriers.erase(std::unique(carriers.begin(), carriers.end()), carriers.end());

  std::vector<Money> top(count);
  for (std::size_t s = 0; s < count; ++s) {
    top[s] = kernel::top_sum(strategies[s].view(), cfg.n_resources);
  }
  std::vector<double> total(count, 0.0);
  std::vector<Money> cumulative;
  for (std::size_t c : carriers) {
    const BudgetSequence& seq = strategies[c];
    for (int r = 0; r < rollouts; ++r) {
      Rollout roll;
      if (ring != nullptr) {
        const MlpPolicy drawn = ring->sample(rng);
        roll = play_algorithm(cfg, drawn, seq, rng, false, decode);
      } else {
        roll = play_algorithm(cfg, alg, seq, rng, false, decode);
      }
      cumulative.assign(seq.size() + 1, 0);
      for (std::size_t i = 0; i < seq.size(); ++i) {
        cumulative[i + 1] = cumulative[i] + (roll.accepted[i] ? seq[i] : 0);
      }
      for (std::size_t s = 0; s < count; ++s) {
        if (carrier[s] != c) continue;
        total[s] += static_cast<double>(top[s] - cumulative[strategies[s].size()]);
      }
    }
  }
  for (double& t : total) t /= rollouts;
  return total;
}

std::vector<double> expected_gaps_vs_adversary(
    const GameConfig& cfg, const MlpPolicy& adv,
    const std::vector<PriceSequence>& strategies, int rollouts, Rng& rng) {
  check_strategies_nonempty(strategies.size());
  std::vector<double> total(strategies.size(), 0.0);
  for (int r = 0; r < rollouts; ++r) {
    const AdversarySample sample = sample_adversary(cfg, adv, rng);
    for (std::size_t s = 0; s < strategies.size(); ++s) {
      total[s] += static_cast<double>(
          kernel::gap(sample.budgets.view(), strategies[s].view(), cfg.n_resources));
    }
  }
  for (double& t : total) t /= rollouts;
  return total;
}

TrainResult train_joint(const GameConfig& cfg, const TrainConfig& tcfg,
                        const MetricsSink& sink) {
  cfg.validate();
  tcfg.validate();
  TrainResult result = make_result(cfg, tcfg);
  Recorder rec(tcfg, sink, result);
  Rng adv_rng = derive_rng(tcfg.seed, "adv-sample");
  Rng alg_rng = derive_rng(tcfg.seed, "alg-sample");
  std::vector<double> adv_grad(result.adv.num_params());
  std::vector<double> alg_grad(result.alg.num_params());
  const double batch = tcfg.batch;

  for (long it = 1; it <= tcfg.iterations(); ++it) {
    for (int step = 0; step < tcfg.xi; ++step) {
      std::fill(adv_grad.begin(), adv_grad.end(), 0.0);
      for (int j = 0; j < tcfg.batch; ++j) {
        const AdversarySample sample = sample_adversary(cfg, result.adv, adv_rng);
        const Rollout roll = play_algorithm(cfg, result.alg, sample.budgets, alg_rng);
        accumulate_adv_gradient(cfg, result.adv, sample, roll.prices, adv_grad);
      }
      sgd_step(result.adv, adv_grad, tcfg.lr_adv / batch, tcfg.grad_clip);
    }
    std::fill(alg_grad.begin(), alg_grad.end(), 0.0);
    for (int j = 0; j < tcfg.batch; ++j) {
      const AdversarySample sample = sample_adversary(cfg, result.adv, adv_rng);
      const Rollout roll = play_algorithm(cfg, result.alg, sample.budgets, alg_rng, true);
      accumulate_alg_gradient(cfg, result.alg, sample.budgets, roll, alg_grad);
      rec.episode(roll.gap, roll.welfare);
    }
    sgd_step(result.alg, alg_grad, tcfg.lr_alg / batch, tcfg.grad_clip);
    result.alg_snapshots.push(rec.episodes(), result.alg.params());
    result.adv_snapshots.push(rec.episodes(), result.adv.params());
    rec.end_iteration(it);
  }
  return result;
}

TrainResult train_alg_vs_mw(const GameConfig& cfg, const TrainConfig& tcfg,
                            const std::vector<BudgetSequence>& adversary_strategies,
                            const MetricsSink& sink) {
  cfg.validate();
  tcfg.validate();
  check_strategies_nonempty(adversary_strategies.size());
  for (const BudgetSequence& s : adversary_strategies) {
    if (s.empty()) throw InvalidInput("adversary strategies must be non-empty sequences");
    validate_budgets(cfg, s);
  }
  TrainResult result = make_result(cfg, tcfg);
  Recorder rec(tcfg, sink, result);
  MwState mw = MwState::uniform(adversary_strategies.size(), tcfg.mw_eta);
  Rng mw_rng = derive_rng(tcfg.seed, "mw-sample");
  Rng alg_rng = derive_rng(tcfg.seed, "alg-sample");
  Rng eval_rng = derive_rng(tcfg.seed, "mw-rollout");
  std::vector<double> alg_grad(result.alg.num_params());
  const double batch = tcfg.batch;

  for (long it = 1; it <= tcfg.iterations(); ++it) {
    const std::vector<double> dist = mw.distribution();
    std::fill(alg_grad.begin(), alg_grad.end(), 0.0);
    for (int j = 0; j < tcfg.batch; ++j) {
      const BudgetSequence& budgets = adversary_strategies[sample_categorical(mw_rng, dist)];
      const Rollout roll = play_algorithm(cfg, result.alg, budgets, alg_rng, true);
      accumulate_alg_gradient(cfg, result.alg, budgets, roll, alg_grad);
      rec.episode(roll.gap, roll.welfare);
    }
    sgd_step(result.alg, alg_grad, tcfg.lr_alg / batch, tcfg.grad_clip);
    const std::vector<double> gaps = expected_gaps_vs_algorithm(
        cfg, result.alg, adversary_strategies, tcfg.mw_rollouts, eval_rng);
    mw = mw_update(std::move(mw), gaps);
    result.alg_snapshots.push(rec.episodes(), result.alg.params());
    rec.end_iteration(it);
  }
  result.mw_distribution = mw.distribution();
  return result;
}

TrainResult train_adv_vs_mw(const GameConfig& cfg, const TrainConfig& tcfg,
                            const std::vector<PriceSequence>& algorithm_strategies,
                            const MetricsSink& sink) {
  cfg.validate();
  tcfg.validate();
  check_strategies_nonempty(algorithm_strategies.size());
  for (const PriceSequence& s : algorithm_strategies) {
    if (s.size() != static_cast<std::size_t>(cfg.n_users)) {
      throw InvalidInput("algorithm strategies must have exactly n_users prices");
    }
    validate_prices(cfg, s);
  }
  TrainResult result = make_result(cfg, tcfg);
  Recorder rec(tcfg, sink, result);
  MwState mw = MwState::uniform(algorithm_strategies.size(), tcfg.mw_eta);
  Rng mw_rng = derive_rng(tcfg.seed, "mw-sample");
  Rng adv_rng = derive_rng(tcfg.seed, "adv-sample");
  Rng eval_rng = derive_rng(tcfg.seed, "mw-rollout");
  std::vector<double> adv_grad(result.adv.num_params());
  const double batch = tcfg.batch;

  for (long it = 1; it <= tcfg.iterations(); ++it) {
    const std::vector<double> dist = mw.distribution();
    for (int step = 0; step < tcfg.xi; ++step) {
      std::fill(adv_grad.begin(), adv_grad.end(), 0.0);
      const bool last_step = step + 1 == tcfg.xi;
      for (int j = 0; j < tcfg.batch; ++j) {
        const AdversarySample sample = sample_adversary(cfg, result.adv, adv_rng);
        const PriceSequence& prices = algorithm_strategies[sample_categorical(mw_rng, dist)];
        accumulate_adv_gradient(cfg, result.adv, sample, prices, adv_grad);
        if (last_step) {
          const AllocationTrace trace = simulate_alg(cfg, sample.budgets, prices);
          rec.episode(trace.gap, trace.alg_welfare);
        }
      }
      sgd_step(result.adv, adv_grad, tcfg.lr_adv / batch, tcfg.grad_clip);
    }
    std::vector<double> payoff = expected_gaps_vs_adversary(
        cfg, result.adv, algorithm_strategies, tcfg.mw_rollouts, eval_rng);
    for (double& v : payoff) v = -v;
    mw = mw_update(std::move(mw), payoff);
    result.adv_snapshots.push(rec.episodes(), result.adv.params());
    rec.end_iteration(it);
  }
  result.mw_distribution = mw.distribution();
  return result;
}

}  // namespace advalloc

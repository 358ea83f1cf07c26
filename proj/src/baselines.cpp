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

#include "advalloc/baselines.hpp"

#include <algorithm>
#include <cmath>

#include "advalloc/error.hpp"

namespace advalloc {
namespace {

constexpr double kPriceSlack = 1e-9;

bool affordable(Money budget, double price) {
  return static_cast<double>(budget) + kPriceSlack >= price;
}

// Smallest grid budget a user at this price would pay; max(B) if none.
Money clearing_budget(const GameConfig& cfg, double price) {
  for (Money b : cfg.budget_set) {
    if (affordable(b, price)) return b;
  }
  return cfg.budget_set.back();
}

// Largest grid budget that is refused at this price, if any.
std::optional<Money> refused_budget(const GameConfig& cfg, double price) {
  std::optional<Money> out;
  for (Money b : cfg.budget_set) {
    if (!affordable(b, price)) out = b;
  }
  return out;
}

BudgetSequence build_for_target(const GameConfig& cfg, OnlinePolicy& policy, int target,
                                Rng& rng) {
  policy.begin(rng);
  std::vector<Money> seq;
  seq.reserve(static_cast<std::size_t>(cfg.n_users));
  int available = cfg.n_resources;
  int sold = 0;
  for (int slot = 0; slot < cfg.n_users; ++slot) {
    const PolicyState st{slot, available, cfg.n_resources, cfg.n_users};
    const double p = policy.price(st);
    Money b;
    if (available == 0) {
      b = cfg.budget_set.back();
    } else if (sold < target) {
      b = clearing_budget(cfg, p);
    } else {
      b = refused_budget(cfg, p).value_or(clearing_budget(cfg, p));
    }
    const bool accepted = available > 0 && affordable(b, p);
    policy.observe(b, p, accepted);
    if (accepted) {
      --available;
      ++sold;
    }
    seq.push_back(b);
  }
  return BudgetSequence(std::move(seq));
}

double sequence_ratio(const GameConfig& cfg, OnlinePolicy& policy, const BudgetSequence& seq,
                      Rng& rng, int runs) {
  const double bench = static_cast<double>(kernel::top_sum(seq.view(), cfg.n_resources));
  return competitive_ratio(bench, expected_welfare(cfg, policy, seq, rng, runs));
}

BudgetSequence uniform_sequence(const GameConfig& cfg, Rng& rng) {
  std::uniform_int_distribution<std::size_t> pick(0, cfg.budget_set.size() - 1);
  std::vector<Money> seq(static_cast<std::size_t>(cfg.n_users));
  for (Money& b : seq) b = cfg.budget_set[pick(rng)];
  return BudgetSequence(std::move(seq));
}

}  // namespace

BaselineParams BaselineParams::from(const GameConfig& cfg) {
  return BaselineParams{static_cast<double>(cfg.upper_bound()),
                        static_cast<double>(cfg.lower_bound())};
}

void BaselineParams::validate() const {
  if (!(lower > 0.0) || !(upper >= lower)) {
    throw InvalidInput("baseline bounds need U >= L > 0");
  }
}

double kp_threshold_price(const BaselineParams& params, double z) {
  params.validate();
  if (z < 0.0 || z > 1.0) throw InvalidInput("used fraction must lie in [0, 1]");
  const double e = std::exp(1.0);
  return std::pow(params.upper * e / params.lower, z) * (params.lower / e);
}

int randomized_exponent_count(const BaselineParams& params) {
  params.validate();
  // floor(log2(U / L)) without trusting log2 at exact powers of two.
  int k = 0;
  while (params.lower * std::ldexp(1.0, k + 1) <= params.upper * (1.0 + 1e-12)) ++k;
  return k + 1;
}

double KpThresholdPolicy::price(const PolicyState& state) {
  return kp_threshold_price(params_, std::clamp(state.used_fraction(), 0.0, 1.0));
}

RandomizedPolicy::RandomizedPolicy(BaselineParams params)
    : params_(params), count_(randomized_exponent_count(params)) {}

void RandomizedPolicy::begin(Rng& rng) {
  if (fixed_) {
    current_ = *fixed_;
    return;
  }
  std::uniform_int_distribution<int> pick(0, count_ - 1);
  current_ = pick(rng);
}

double RandomizedPolicy::price(const PolicyState&) {
  return params_.lower * std::ldexp(1.0, current_);
}

LearnedPolicy::LearnedPolicy(const GameConfig& cfg, MlpPolicy policy, Decode decode)
    : cfg_(cfg), fixed_(std::move(policy)), decode_(decode) {
  if (fixed_->kind() != PolicyKind::kAlgorithm) {
    throw InvalidInput("learned policy needs an algorithm network");
  }
}

LearnedPolicy::LearnedPolicy(const GameConfig& cfg, const SnapshotRing& ring, Decode decode)
    : cfg_(cfg), ring_(&ring), decode_(decode) {
  if (ring.empty()) throw InvalidInput("snapshot ring is empty");
  if (ring.shape().kind != PolicyKind::kAlgorithm) {
    throw InvalidInput("learned policy needs algorithm snapshots");
  }
}

bool LearnedPolicy::deterministic() const {
  return decode_ == Decode::kArgmax && (fixed_.has_value() || ring_->size() == 1);
}

void LearnedPolicy::begin(Rng& rng) {
  rng_ = &rng;
  history_.clear();
  last_budget_ = 0;
  last_price_ = 0;
  if (fixed_) {
    return;
  }
  active_.emplace(ring_->size() == 1 ? ring_->policy_at(0) : ring_->sample(rng));
}

double LearnedPolicy::price(const PolicyState& state) {
  const MlpPolicy& net = fixed_ ? *fixed_ : *active_;
  pending_ = make_step_features(cfg_, state.slot, state.available, last_budget_, last_price_);
  const std::vector<double> probs = alg_forward(net, history_, pending_);
  std::size_t choice;
  if (decode_ == Decode::kArgmax) {
    choice = static_cast<std::size_t>(std::max_element(probs.begin(), probs.end()) -
                                      probs.begin());
  } else {
    if (rng_ == nullptr) throw InvalidInput("learned policy used before begin()");
    choice = sample_categorical(*rng_, probs);
  }
  return static_cast<double>(cfg_.price_set[choice]);
}

void LearnedPolicy::observe(Money budget, double price, bool) {
  history_.push_back(pending_);
  last_budget_ = budget;
  last_price_ = static_cast<Money>(std::llround(price));
}

PolicyRun run_policy(const GameConfig& cfg, OnlinePolicy& policy, const BudgetSequence& budgets,
                     Rng& rng) {
  if (budgets.size() > static_cast<std::size_t>(cfg.n_users)) {
    throw InvalidInput("budget sequence is longer than n_users");
  }
  PolicyRun run;
  policy.begin(rng);
  int available = cfg.n_resources;
  for (std::size_t i = 0; i < budgets.size(); ++i) {
    const PolicyState st{static_cast<int>(i), available, cfg.n_resources, cfg.n_users};
    const double p = policy.price(st);
    const bool accepted = available > 0 && affordable(budgets[i], p);
    if (accepted) {
      --available;
      run.welfare += budgets[i];
    }
    run.prices.push_back(p);
    run.accepted.push_back(accepted);
    policy.observe(budgets[i], p, accepted);
  }
  run.benchmark = kernel::top_sum(budgets.view(), cfg.n_resources);
  return run;
}

double competitive_ratio(double benchmark, double welfare) {
  if (welfare > 0.0) return benchmark / welfare;
  return benchmark > 0.0 ? kInfiniteRatio : 1.0;
}

double expected_welfare(const GameConfig& cfg, OnlinePolicy& policy,
                        const BudgetSequence& budgets, Rng& rng, int runs) {
  if (policy.deterministic()) {
    return static_cast<double>(run_policy(cfg, policy, budgets, rng).welfare);
  }
  if (auto* randomized = dynamic_cast<RandomizedPolicy*>(&policy)) {
    double total = 0.0;
    for (int i = 0; i < randomized->exponent_count(); ++i) {
      randomized->fix_exponent(i);
      total += static_cast<double>(run_policy(cfg, policy, budgets, rng).welfare);
    }
    randomized->fix_exponent(std::nullopt);
    return total / randomized->exponent_count();
  }
  if (runs < 1) throw InvalidInput("runs must be positive");
  double total = 0.0;
  for (int r = 0; r < runs; ++r) {
    total += static_cast<double>(run_policy(cfg, policy, budgets, rng).welfare);
  }
  return total / runs;
}

BudgetSequence worst_case_for_threshold(const GameConfig& cfg, OnlinePolicy& policy) {
  cfg.validate();
  Rng rng = derive_rng(0, "worst-case-threshold");
  std::optional<BudgetSequence> best;
  double best_ratio = -1.0;
  for (int target = 0; target <= cfg.n_resources; ++target) {
    Rng build_rng = rng;
    BudgetSequence seq = build_for_target(cfg, policy, target, build_rng);
    Rng eval_rng = rng;
    const double ratio = sequence_ratio(cfg, policy, seq, eval_rng, 1);
    if (ratio > best_ratio) {
      best_ratio = ratio;
      best = std::move(seq);
    }
  }
  return *best;
}

BudgetSequence worst_case_for_randomized(const GameConfig& cfg, RandomizedPolicy& policy) {
  cfg.validate();
  const BaselineParams params = BaselineParams::from(cfg);
  std::vector<Money> stairs;
  for (int t = 0; t < policy.exponent_count(); ++t) {
    const double level = params.lower * std::ldexp(1.0, t);
    const Money b = clearing_budget(cfg, level);
    for (int k = 0; k < cfg.n_resources; ++k) stairs.push_back(b);
  }
  const std::size_t n = std::min(stairs.size(), static_cast<std::size_t>(cfg.n_users));
  Rng rng = derive_rng(0, "worst-case-randomized");
  std::optional<BudgetSequence> best;
  double best_ratio = -1.0;
  for (std::size_t len = 1; len <= n; ++len) {
    if (len != n && len % static_cast<std::size_t>(cfg.n_resources) != 0) continue;
    BudgetSequence seq(std::vector<Money>(stairs.begin(), stairs.begin() + static_cast<long>(len)));
    const double ratio = sequence_ratio(cfg, policy, seq, rng, 1);
    if (ratio > best_ratio) {
      best_ratio = ratio;
      best = std::move(seq);
    }
  }
  return *best;
}

std::vector<PolicyMetrics> evaluate_policies(const GameConfig& cfg,
                                             const std::vector<OnlinePolicy*>& policies,
                                             const BenchOptions& options) {
  cfg.validate();
  if (options.n_sequences < 1) throw InvalidInput("n_sequences must be positive");
  std::vector<PolicyMetrics> out;
  for (OnlinePolicy* policy : policies) {
    PolicyMetrics row;
    row.policy = policy->name();
    row.mode = options.mode;
    Rng play_rng = derive_rng(options.seed, "bench-play-" + row.policy);
    if (options.mode == BenchMode::kRandom) {
      double worst = 0.0;
      for (long k = 0; k < options.n_sequences; ++k) {
        Rng seq_rng = derive_rng(options.seed, "bench-sequence", static_cast<std::uint64_t>(k));
        const BudgetSequence seq = uniform_sequence(cfg, seq_rng);
        const PolicyRun run = run_policy(cfg, *policy, seq, play_rng);
        row.mean_welfare += static_cast<double>(run.welfare);
        row.mean_benchmark += static_cast<double>(run.benchmark);
        row.mean_gap += static_cast<double>(run.gap());
        worst = std::max(worst, competitive_ratio(static_cast<double>(run.benchmark),
                                                  static_cast<double>(run.welfare)));
      }
      const double inv = 1.0 / static_cast<double>(options.n_sequences);
      row.mean_welfare *= inv;
      row.mean_benchmark *= inv;
      row.mean_gap *= inv;
      row.competitive_ratio = worst;
      row.sequences = options.n_sequences;
    } else {
      const int runs = static_cast<int>(std::min<long>(options.n_sequences, 100));
      std::vector<BudgetSequence> candidates;
      if (auto* randomized = dynamic_cast<RandomizedPolicy*>(policy);
          randomized != nullptr && !randomized->deterministic()) {
        candidates.push_back(worst_case_for_randomized(cfg, *randomized));
      } else {
        candidates.push_back(worst_case_for_threshold(cfg, *policy));
      }
      if (options.adversary != nullptr && !policy->deterministic()) {
        Rng adv_rng = derive_rng(options.seed, "bench-adversary");
        for (long k = 0; k < options.n_sequences; ++k) {
          const MlpPolicy adv = options.adversary->sample(adv_rng);
          candidates.push_back(sample_adversary(cfg, adv, adv_rng).budgets);
        }
      }
      double best_ratio = -1.0;
      for (const BudgetSequence& seq : candidates) {
        const double bench = static_cast<double>(kernel::top_sum(seq.view(), cfg.n_resources));
        const double welfare = expected_welfare(cfg, *policy, seq, play_rng, runs);
        const double ratio = competitive_ratio(bench, welfare);
        if (ratio > best_ratio) {
          best_ratio = ratio;
          row.competitive_ratio = ratio;
          row.mean_welfare = welfare;
          row.mean_benchmark = bench;
          row.mean_gap = bench - welfare;
        }
      }
      row.sequences = static_cast<long>(candidates.size());
    }
    out.push_back(row);
  }
  return out;
}

const char* to_string(BenchMode mode) {
  return mode == BenchMode::kWorst ? "worst" : "random";
}

}  // namespace advalloc

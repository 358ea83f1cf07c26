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

#ifndef ADVALLOC_BASELINES_HPP_
#define ADVALLOC_BASELINES_HPP_

// Classical online allocation rules and worst-case inputs for them.

#include <functional>
#include <limits>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "advalloc/core.hpp"
#include "advalloc/nn.hpp"
#include "advalloc/rng.hpp"
#include "advalloc/snapshot.hpp"
#include "advalloc/train.hpp"

namespace advalloc {

struct BaselineParams {
  double upper = 1.0;  // U
  double lower = 1.0;  // L

  static BaselineParams from(const GameConfig& cfg);
  void validate() const;
};

// psi(z) = (U e / L)^z (L / e), z = fraction of resources already used.
double kp_threshold_price(const BaselineParams& params, double z);

// Number of exponents i in {0, ..., floor(log2(U / L))}.
int randomized_exponent_count(const BaselineParams& params);

struct PolicyState {
  int slot = 0;
  int available = 0;
  int n_resources = 0;
  int n_users = 0;

  double used_fraction() const {
    return static_cast<double>(n_resources - available) / n_resources;
  }
};

// A posted-price rule.  A user is served iff resources remain and
// budget >= price.
class OnlinePolicy {
 public:
  virtual ~OnlinePolicy() = default;
  virtual std::string name() const = 0;
  virtual bool deterministic() const { return true; }
  // Called before each sequence.  rng stays valid until the sequence ends.
  virtual void begin(Rng& rng) { (void)rng; }
  virtual double price(const PolicyState& state) = 0;
  virtual void observe(Money budget, double price, bool accepted) {
    (void)budget;
    (void)price;
    (void)accepted;
  }
};

class KpThresholdPolicy : public OnlinePolicy {
 public:
  explicit KpThresholdPolicy(BaselineParams params) : params_(params) { params_.validate(); }
  std::string name() const override { return "kp-threshold"; }
  double price(const PolicyState& state) override;

 private:
  BaselineParams params_;
};

class RandomizedPolicy : public OnlinePolicy {
 public:
  explicit RandomizedPolicy(BaselineParams params);
  std::string name() const override { return "randomized"; }
  bool deterministic() const override { return fixed_.has_value(); }
  // i is drawn once per sequence.
  void begin(Rng& rng) override;
  double price(const PolicyState& state) override;

  int exponent_count() const { return count_; }
  // Pins i for every following sequence (used for exact expectations).
  void fix_exponent(std::optional<int> i) { fixed_ = i; }
  int current_exponent() const { return current_; }

 private:
  BaselineParams params_;
  int count_;
  int current_ = 0;
  std::optional<int> fixed_;
};

class GreedyPolicy : public OnlinePolicy {
 public:
  explicit GreedyPolicy(BaselineParams params) : params_(params) { params_.validate(); }
  std::string name() const override { return "greedy"; }
  double price(const PolicyState&) override { return params_.lower; }

 private:
  BaselineParams params_;
};

// Caller-supplied price function of the used fraction z.
class PriceFunctionPolicy : public OnlinePolicy {
 public:
  PriceFunctionPolicy(std::string name, std::function<double(double)> psi)
      : name_(std::move(name)), psi_(std::move(psi)) {}
  std::string name() const override { return name_; }
  double price(const PolicyState& state) override { return psi_(state.used_fraction()); }

 private:
  std::string name_;
  std::function<double(double)> psi_;
};

// The pricing network.  With a snapshot ring each sequence is played by a
// uniformly drawn snapshot; with argmax decoding and a single network the
// policy is deterministic.
class LearnedPolicy : public OnlinePolicy {
 public:
  LearnedPolicy(const GameConfig& cfg, MlpPolicy policy, Decode decode);
  LearnedPolicy(const GameConfig& cfg, const SnapshotRing& ring, Decode decode);
  std::string name() const override { return "learned"; }
  bool deterministic() const override;
  void begin(Rng& rng) override;
  double price(const PolicyState& state) override;
  void observe(Money budget, double price, bool accepted) override;

 private:
  GameConfig cfg_;
  std::optional<MlpPolicy> fixed_;
  const SnapshotRing* ring_ = nullptr;
  std::optional<MlpPolicy> active_;
  Decode decode_;
  Rng* rng_ = nullptr;
  std::vector<StepFeatures> history_;
  StepFeatures pending_;
  Money last_budget_ = 0;
  Money last_price_ = 0;
};

struct PolicyRun {
  std::vector<double> prices;
  std::vector<bool> accepted;
  Money welfare = 0;
  Money benchmark = 0;
  Money gap() const { return benchmark - welfare; }
};

PolicyRun run_policy(const GameConfig& cfg, OnlinePolicy& policy,
                     const BudgetSequence& budgets, Rng& rng);

inline constexpr double kInfiniteRatio = std::numeric_limits<double>::infinity();

// benchmark / welfare; infinity when welfare is 0 and the benchmark is not.
double competitive_ratio(double benchmark, double welfare);

// Accepts the smallest grid budget at or above each posted price until a
// target number of sales, then offers the largest grid budget below the
// current price (max(B) once resources are gone).  The target giving the
// highest ratio wins.
BudgetSequence worst_case_for_threshold(const GameConfig& cfg, OnlinePolicy& policy);

// Ascending staircase: blocks of R users at the smallest grid budget at or
// above L 2^t, t = 0, 1, ...; the prefix with the highest expected ratio wins.
BudgetSequence worst_case_for_randomized(const GameConfig& cfg, RandomizedPolicy& policy);

// Exact for deterministic and Randomized policies, Monte Carlo otherwise.
double expected_welfare(const GameConfig& cfg, OnlinePolicy& policy,
                        const BudgetSequence& budgets, Rng& rng, int runs);

enum class BenchMode { kWorst, kRandom };

struct PolicyMetrics {
  std::string policy;
  BenchMode mode = BenchMode::kRandom;
  long sequences = 0;
  double competitive_ratio = 0.0;  // worst observed
  double mean_welfare = 0.0;
  double mean_benchmark = 0.0;
  double mean_gap = 0.0;
};

struct BenchOptions {
  BenchMode mode = BenchMode::kRandom;
  long n_sequences = 1000;
  std::uint64_t seed = 0;
  // Budget generator snapshots proposing candidate worst cases for
  // policies without a constructive one.
  const SnapshotRing* adversary = nullptr;
};

std::vector<PolicyMetrics> evaluate_policies(const GameConfig& cfg,
                                             const std::vector<OnlinePolicy*>& policies,
                                             const BenchOptions& options);

const char* to_string(BenchMode mode);

}  // namespace advalloc

#endif  // ADVALLOC_BASELINES_HPP_

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

#ifndef ADVALLOC_TRAIN_HPP_
#define ADVALLOC_TRAIN_HPP_

// Adversarial self-play between the pricing network and the budget
// generator, plus the two single-network drills where the opponent is a
// multiplicative-weights player over a fixed list of pure strategies.

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "advalloc/core.hpp"
#include "advalloc/mw.hpp"
#include "advalloc/nn.hpp"
#include "advalloc/rng.hpp"
#include "advalloc/snapshot.hpp"

namespace advalloc {

struct TrainConfig {
  int xi = 1;               // adversary steps per iteration
  int batch = 32;           // sequences per update
  long episodes = 0;        // total sequences; iterations = ceil(episodes / batch)
  double lr_alg = 1e-3;
  double lr_adv = 1e-3;
  std::uint64_t seed = 0;
  std::size_t snapshot_window = 1000;
  double mw_eta = 0.01;
  int mw_rollouts = 16;     // Monte-Carlo plays per pure strategy per MW update
  double grad_clip = 0.0;   // 0 disables clipping
  int trailing_window = 500;
  NetworkConfig net;

  long iterations() const { return episodes <= 0 ? 0 : (episodes + batch - 1) / batch; }
  void validate() const;
};

struct MetricsRow {
  long iteration = 0;
  long episodes = 0;
  double mean_gap = 0.0;
  double mean_welfare = 0.0;
  double trailing_avg_gap = 0.0;  // over the last trailing_window episodes
};

using MetricsSink = std::function<void(const MetricsRow&)>;

enum class Decode { kSample, kArgmax };

// One play of the pricing network on a budget sequence.
struct Rollout {
  PriceSequence prices;
  std::vector<bool> accepted;
  std::vector<ForwardTape> tapes;  // filled only when requested
  Money welfare = 0;
  Money benchmark = 0;
  Money gap = 0;
};

Rollout play_algorithm(const GameConfig& cfg, const MlpPolicy& alg,
                       const BudgetSequence& budgets, Rng& rng,
                       bool keep_tapes = false, Decode decode = Decode::kSample);

struct AdversarySample {
  BudgetSequence budgets;
  ForwardTape tape;
};

AdversarySample sample_adversary(const GameConfig& cfg, const MlpPolicy& adv,
                                 Rng& rng);

struct TrainResult {
  MlpPolicy alg;
  MlpPolicy adv;
  SnapshotRing alg_snapshots;
  SnapshotRing adv_snapshots;
  std::vector<MetricsRow> metrics;
  std::vector<double> mw_distribution;  // MW modes only
};

TrainResult train_joint(const GameConfig& cfg, const TrainConfig& tcfg,
                        const MetricsSink& sink = {});

// Pricing network against an MW adversary mixing the given budget sequences.
TrainResult train_alg_vs_mw(const GameConfig& cfg, const TrainConfig& tcfg,
                            const std::vector<BudgetSequence>& adversary_strategies,
                            const MetricsSink& sink = {});

// Budget generator against an MW algorithm mixing the given price sequences.
TrainResult train_adv_vs_mw(const GameConfig& cfg, const TrainConfig& tcfg,
                            const std::vector<PriceSequence>& algorithm_strategies,
                            const MetricsSink& sink = {});

// Monte-Carlo expected gap of each budget sequence against a pricing policy.
// Strategies that are prefixes of a longer one share its plays.  When
// `ring` is given every play draws a snapshot uniformly from it.
std::vector<double> expected_gaps_vs_algorithm(
    const GameConfig& cfg, const MlpPolicy& alg,
    const std::vector<BudgetSequence>& strategies, int rollouts, Rng& rng,
    const SnapshotRing* ring = nullptr, Decode decode = Decode::kSample);

// Monte-Carlo expected gap of each price sequence against a budget
// generator, using the same sampled budget sequences for every strategy.
std::vector<double> expected_gaps_vs_adversary(
    const GameConfig& cfg, const MlpPolicy& adv,
    const std::vector<PriceSequence>& strategies, int rollouts, Rng& rng);

std::vector<BudgetSequence> prefix_strategies(const BudgetSequence& sequence);

}  // namespace advalloc

#endif  // ADVALLOC_TRAIN_HPP_

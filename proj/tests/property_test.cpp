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

#include <gtest/gtest.h>

#include <algorithm>
#include <functional>

#include "advalloc/core.hpp"
#include "advalloc/grad.hpp"
#include "advalloc/oracle.hpp"
#include "gradcheck.hpp"
#include "support.hpp"

namespace advalloc {
namespace {

using testing::Gen;

struct OracleInstance {
  GameConfig cfg;
  PriceSequence prices;
  std::vector<Money> prefix;
};

OracleInstance random_instance(Gen& gen) {
  const GameConfig cfg = gen.config(6, 3, 3, 3, 8);
  PriceSequence prices(gen.from(cfg.price_set, cfg.n_users));
  const int len = gen.integer(0, cfg.n_users);
  return {cfg, prices, gen.from(cfg.budget_set, len)};
}

TEST(OracleProperty, MatchesExhaustiveSearch) {
  Gen gen(101);
  for (int t = 0; t < 1000; ++t) {
    const OracleInstance in = random_instance(gen);
    const CompletionResult fast = opt_budget(in.cfg, in.prices, in.prefix);
    const Money ref = testing::ref_max_gap(in.cfg.budget_set, in.prices.values(), in.prefix, in.cfg.n_resources);
    ASSERT_EQ(fast.gap, ref) << "instance " << t << " prices " << format_sequence(in.prices.view());
    ASSERT_EQ(fast.gap, brute_force_completion(in.cfg, in.prices, in.prefix).gap);
    // The returned sequence realizes the reported gap and keeps the prefix.
    ASSERT_EQ(fast.full_sequence.size(), static_cast<std::size_t>(in.cfg.n_users));
    ASSERT_TRUE(std::equal(in.prefix.begin(), in.prefix.end(), fast.full_sequence.begin()));
    ASSERT_EQ(testing::ref_gap(fast.full_sequence.values(), in.prices.values(), in.cfg.n_resources), fast.gap);
    for (Money b : fast.full_sequence) ASSERT_TRUE(in.cfg.has_budget(b));
  }
}

TEST(OracleProperty, GapNeverDropsWhenPrefixShrinks) {
  Gen gen(103);
  for (int t = 0; t < 300; ++t) {
    const OracleInstance in = random_instance(gen);
    if (in.prefix.empty()) continue;
    const std::vector<Money> shorter(in.prefix.begin(), in.prefix.end() - 1);
    EXPECT_GE(opt_budget(in.cfg, in.prices, shorter).gap, opt_budget(in.cfg, in.prices, in.prefix).gap);
  }
}

TEST(GradientProperty, BackpropMatchesFiniteDifferences) {
  const testing::GradCheckSummary s = testing::grad_check_suite(100);
  EXPECT_EQ(s.checked, 100);
  EXPECT_LE(s.max_rel_error, 1e-4);
  // Kink crossings are rare at this step size.
  EXPECT_LE(s.skipped, 10);
}

Money top_sum_ref(std::vector<Money> v, int k) { return testing::ref_benchmark(std::move(v), k); }

TEST(LambdaProperty, LiesBetweenMarginalValues) {
  Gen gen(107);
  for (int t = 0; t < 500; ++t) {
    const GameConfig cfg = gen.config(7, 3, 4, 4, 9);
    const BudgetSequence budgets(gen.from(cfg.budget_set, cfg.n_users));
    const int slot = gen.integer(0, cfg.n_users - 1);
    std::vector<bool> accepts(static_cast<std::size_t>(slot), false);
    int used = 0;
    for (std::size_t i = 0; i < accepts.size(); ++i) {
      if (used < cfg.n_resources && gen.integer(0, 1) == 1) {
        accepts[i] = true;
        ++used;
      }
    }
    const int y = cfg.n_resources - used;
    const DualInfo d = lambda_star(cfg, budgets, slot, accepts);
    EXPECT_EQ(d.available, y);
    EXPECT_GE(d.lambda_star, 0.0);
    EXPECT_LE(d.lambda_star, static_cast<double>(cfg.upper_bound()));
    if (y == 0) {
      EXPECT_EQ(d.lambda_star, static_cast<double>(cfg.upper_bound()));
      continue;
    }
    const std::vector<Money> rest(budgets.begin() + slot, budgets.end());
    const double gain = static_cast<double>(top_sum_ref(rest, y + 1) - top_sum_ref(rest, y));
    const double loss = static_cast<double>(top_sum_ref(rest, y) - top_sum_ref(rest, y - 1));
    EXPECT_GE(d.lambda_star, gain);
    EXPECT_LE(d.lambda_star, loss);

    const ProbGradient g = alg_prob_gradient(cfg, budgets, slot, accepts);
    for (std::size_t l = 0; l < cfg.price_set.size(); ++l) {
      if (cfg.price_set[l] > budgets[static_cast<std::size_t>(slot)]) {
        EXPECT_EQ(g.per_action[l], 0.0);
      } else {
        EXPECT_DOUBLE_EQ(g.per_action[l], static_cast<double>(budgets[static_cast<std::size_t>(slot)]) - d.lambda_star);
      }
    }
  }
}

TEST(AdversaryGradientProperty, MatchesExhaustiveSearch) {
  Gen gen(109);
  for (int t = 0; t < 300; ++t) {
    const GameConfig cfg = gen.config(5, 3, 3, 3, 8);
    const PriceSequence prices(gen.from(cfg.price_set, cfg.n_users));
    const BudgetSequence sampled(gen.from(cfg.budget_set, cfg.n_users));
    const int slot = gen.integer(0, cfg.n_users - 1);
    const ProbGradient g = adv_prob_gradient(cfg, prices, sampled, slot);
    ASSERT_EQ(g.per_action.size(), cfg.budget_set.size());
    for (std::size_t l = 0; l < cfg.budget_set.size(); ++l) {
      std::vector<Money> prefix(sampled.begin(), sampled.begin() + slot);
      prefix.push_back(cfg.budget_set[l]);
      const Money ref = testing::ref_max_gap(cfg.budget_set, prices.values(), prefix, cfg.n_resources);
      EXPECT_EQ(g.per_action[l], static_cast<double>(ref));
    }
  }
}

TEST(CoreProperty, WelfareBenchmarkAndGap) {
  Gen gen(113);
  for (int t = 0; t < 1000; ++t) {
    const GameConfig cfg = gen.config(10, 4, 4, 5, 12);
    const int len = gen.integer(0, cfg.n_users);
    const BudgetSequence b(gen.from(cfg.budget_set, len));
    const PriceSequence p(gen.from(cfg.price_set, len));
    const AllocationTrace tr = simulate_alg(cfg, b, p);
    ASSERT_EQ(tr.alg_welfare, testing::ref_welfare(b.values(), p.values(), cfg.n_resources));
    ASSERT_EQ(tr.benchmark_value, testing::ref_benchmark(b.values(), cfg.n_resources));
    ASSERT_GE(tr.gap, 0);
    ASSERT_EQ(tr.gap, tr.benchmark_value - tr.alg_welfare);
    const auto accepted = std::count(tr.accepted.begin(), tr.accepted.end(), true);
    ASSERT_LE(accepted, cfg.n_resources);
    const auto flagged = std::count(tr.benchmark_flags.begin(), tr.benchmark_flags.end(), true);
    ASSERT_EQ(flagged, std::min<long>(cfg.n_resources, len));
    Money flagged_sum = 0;
    for (std::size_t i = 0; i < b.size(); ++i) {
      if (tr.benchmark_flags[i]) flagged_sum += b[i];
      // Accepted users paid at most their budget.
      if (tr.accepted[i]) ASSERT_GE(b[i], p[i]);
    }
    ASSERT_EQ(flagged_sum, tr.benchmark_value);
    ASSERT_EQ(gap(cfg, b, p), tr.gap);
  }
}

TEST(CoreProperty, LowestPriceWithAbundanceHasZeroGap) {
  Gen gen(127);
  for (int t = 0; t < 300; ++t) {
    GameConfig cfg = gen.config(6, 3, 3, 1, 9);
    cfg.n_resources = cfg.n_users;
    if (cfg.price_set.front() > cfg.budget_set.front()) continue;
    const BudgetSequence b(gen.from(cfg.budget_set, cfg.n_users));
    const PriceSequence p(std::vector<Money>(static_cast<std::size_t>(cfg.n_users), cfg.price_set.front()));
    EXPECT_EQ(gap(cfg, b, p), 0);
  }
}

}  // namespace
}  // namespace advalloc

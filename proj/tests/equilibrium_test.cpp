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

#include "advalloc/equilibrium.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>

#include "advalloc/error.hpp"
#include "advalloc/simplex.hpp"
#include "support.hpp"

namespace advalloc {
namespace {

using testing::Gen;

PayoffMatrix matrix(std::size_t rows, std::size_t cols, std::vector<double> d) {
  return PayoffMatrix(rows, cols, std::move(d));
}

// Certificate checks computed directly from the game entries.
void expect_certified(const MatrixGame& game, const MixedStrategy& s, double tol = 1e-6) {
  ASSERT_EQ(s.tau_p.size(), game.cols());
  ASSERT_EQ(s.tau_b.size(), game.rows());
  EXPECT_NEAR(std::accumulate(s.tau_p.begin(), s.tau_p.end(), 0.0), 1.0, 1e-9);
  EXPECT_NEAR(std::accumulate(s.tau_b.begin(), s.tau_b.end(), 0.0), 1.0, 1e-9);
  for (double p : s.tau_p) EXPECT_GE(p, -1e-12);
  for (double p : s.tau_b) EXPECT_GE(p, -1e-12);
  for (std::size_t i = 0; i < game.rows(); ++i) {
    double row = 0.0;
    for (std::size_t j = 0; j < game.cols(); ++j) row += game.entry(i, j) * s.tau_p[j];
    EXPECT_LE(row, s.value + tol);
  }
  for (std::size_t j = 0; j < game.cols(); ++j) {
    double col = 0.0;
    for (std::size_t i = 0; i < game.rows(); ++i) col += game.entry(i, j) * s.tau_b[i];
    EXPECT_GE(col, s.value - tol);
  }
  EXPECT_LE(std::abs(s.v_p - s.v_b), tol);
}

TEST(SolveLp, SmallMaximization) {
  // max 3x + 2y s.t. x + y <= 4, x + 3y <= 6, x <= 3 -> x=3, y=1, objective 11.
  LinearProgram lp;
  lp.num_vars = 2;
  lp.objective = {-3.0, -2.0};
  lp.add_row({1.0, 1.0}, RowSense::kLessEqual, 4.0);
  lp.add_row({1.0, 3.0}, RowSense::kLessEqual, 6.0);
  lp.add_row({1.0, 0.0}, RowSense::kLessEqual, 3.0);
  const LpSolution s = solve_lp(lp);
  ASSERT_EQ(s.status, LpStatus::kOptimal);
  EXPECT_NEAR(s.objective, -11.0, 1e-9);
  EXPECT_NEAR(s.x[0], 3.0, 1e-9);
  EXPECT_NEAR(s.x[1], 1.0, 1e-9);
  // Shadow prices: the first and third rows bind.
  EXPECT_NEAR(s.duals[0], -2.0, 1e-9);
  EXPECT_NEAR(s.duals[1], 0.0, 1e-9);
  EXPECT_NEAR(s.duals[2], -1.0, 1e-9);
}

TEST(SolveLp, EqualityAndGreaterRows) {
  // min x + y s.t. x + 2y >= 4, x - y = 1 -> y = 1, x = 2.
  LinearProgram lp;
  lp.num_vars = 2;
  lp.objective = {1.0, 1.0};
  lp.add_row({1.0, 2.0}, RowSense::kGreaterEqual, 4.0);
  lp.add_row({1.0, -1.0}, RowSense::kEqual, 1.0);
  const LpSolution s = solve_lp(lp);
  ASSERT_EQ(s.status, LpStatus::kOptimal);
  EXPECT_NEAR(s.objective, 3.0, 1e-9);
}

TEST(SolveLp, DetectsInfeasibleAndUnbounded) {
  LinearProgram infeasible;
  infeasible.num_vars = 1;
  infeasible.objective = {1.0};
  infeasible.add_row({1.0}, RowSense::kLessEqual, 1.0);
  infeasible.add_row({1.0}, RowSense::kGreaterEqual, 2.0);
  EXPECT_EQ(solve_lp(infeasible).status, LpStatus::kInfeasible);
  LinearProgram unbounded;
  unbounded.num_vars = 2;
  unbounded.objective = {-1.0, 0.0};
  unbounded.add_row({1.0, -1.0}, RowSense::kLessEqual, 1.0);
  EXPECT_EQ(solve_lp(unbounded).status, LpStatus::kUnbounded);
}

TEST(PayoffMatrix, SingleUserEntries) {
  const GameConfig cfg = GameConfig::make(1, 1, {1, 2, 4}, {1, 3, 5});
  const auto rows = all_budget_sequences(cfg);
  const auto cols = all_price_sequences(cfg);
  const PayoffMatrix c = build_payoff_matrix(cfg, rows, cols);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::size_t j = 0; j < cols.size(); ++j) {
      const Money b = rows[i][0];
      const Money p = cols[j][0];
      EXPECT_EQ(c.entry(i, j), b < p ? static_cast<double>(b) : 0.0);
    }
  }
}

TEST(PayoffMatrix, TwoByTwoSingleUser) {
  const GameConfig cfg = GameConfig::make(1, 1, {1, 2}, {1, 2});
  const PayoffMatrix c = build_payoff_matrix(cfg, all_budget_sequences(cfg), all_price_sequences(cfg));
  EXPECT_EQ(c.data(), (std::vector<double>{0.0, 1.0, 0.0, 0.0}));
}

TEST(PayoffMatrix, FullGameCardinality) {
  const GameConfig cfg = GameConfig::make(7, 3, {1, 3, 5, 7}, {2, 4, 6});
  EXPECT_EQ(all_budget_sequences(cfg).size(), 2187u);
  EXPECT_EQ(all_price_sequences(cfg).size(), 16384u);
  EXPECT_THROW(all_price_sequences(cfg, 1000), TooLarge);
}

TEST(PayoffMatrix, CapIsEnforced) {
  EXPECT_THROW(PayoffMatrix(1000, 1000, 1000), TooLarge);
  try {
    PayoffMatrix(1000, 1000, 1000);
  } catch (const TooLarge& e) {
    EXPECT_NE(std::string(e.what()).find("fictitious play"), std::string::npos);
  }
}

TEST(PayoffMatrix, EntriesMatchReferenceGap) {
  Gen gen(17);
  for (int t = 0; t < 30; ++t) {
    const GameConfig cfg = gen.config(4, 3, 3, 3, 6);
    std::vector<BudgetSequence> rows;
    std::vector<PriceSequence> cols;
    for (int k = 0; k < 4; ++k) {
      rows.emplace_back(gen.from(cfg.budget_set, cfg.n_users));
      cols.emplace_back(gen.from(cfg.price_set, cfg.n_users));
    }
    const PayoffMatrix c = build_payoff_matrix(cfg, rows, cols);
    const GapGame g(cfg, rows, cols);
    for (std::size_t i = 0; i < 4; ++i) {
      for (std::size_t j = 0; j < 4; ++j) {
        const double ref = static_cast<double>(testing::ref_gap(rows[i].values(), cols[j].values(), cfg.n_resources));
        EXPECT_EQ(c.entry(i, j), ref);
        EXPECT_EQ(g.entry(i, j), ref);
        ASSERT_GE(c.entry(i, j), 0.0);
      }
    }
  }
}

TEST(ZeroSumLp, LowestPriceIsOptimal) {
  const PayoffMatrix c = matrix(2, 2, {0.0, 1.0, 0.0, 0.0});
  const MixedStrategy s = solve_zero_sum_lp(c);
  EXPECT_NEAR(s.value, 0.0, 1e-9);
  EXPECT_NEAR(s.tau_p[0], 1.0, 1e-9);
  expect_certified(c, s);
}

TEST(ZeroSumLp, MatchingPennies) {
  const PayoffMatrix c = matrix(2, 2, {1.0, 0.0, 0.0, 1.0});
  const MixedStrategy s = solve_zero_sum_lp(c);
  EXPECT_NEAR(s.value, 0.5, 1e-9);
  EXPECT_NEAR(s.tau_p[0], 0.5, 1e-9);
  EXPECT_NEAR(s.tau_b[0], 0.5, 1e-9);
  expect_certified(c, s);
}

TEST(ZeroSumLp, RestrictedGameValue) {
  const GameConfig cfg = GameConfig::make(7, 3, {1, 2, 3}, {1, 2, 3});
  const std::vector<PriceSequence> cols{PriceSequence{1, 1, 2, 2, 3, 3, 3},
                                        PriceSequence{1, 1, 1, 2, 2, 2, 3},
                                        PriceSequence{1, 2, 2, 2, 3, 3, 3}};
  const GapGame game(cfg, all_budget_sequences(cfg), cols);
  const MixedStrategy s = solve_zero_sum_lp(game);
  EXPECT_NEAR(s.value, 13.0 / 3.0, 1e-9);
  expect_certified(game, s);
}

// Value of a 2 x n game by scanning the row player's mixing weight; an
// independent oracle for small random instances.
double two_row_value(const PayoffMatrix& c) {
  double best = -1e300;
  const int steps = 200000;
  for (int k = 0; k <= steps; ++k) {
    const double q = static_cast<double>(k) / steps;
    double worst = 1e300;
    for (std::size_t j = 0; j < c.cols(); ++j) {
      worst = std::min(worst, q * c.entry(0, j) + (1.0 - q) * c.entry(1, j));
    }
    best = std::max(best, worst);
  }
  return best;
}

TEST(ZeroSumLp, MatchesScanOnTwoRowGames) {
  Gen gen(23);
  for (int t = 0; t < 20; ++t) {
    const std::size_t n = static_cast<std::size_t>(gen.integer(2, 6));
    std::vector<double> d(2 * n);
    for (double& v : d) v = static_cast<double>(gen.integer(0, 9));
    const PayoffMatrix c = matrix(2, n, d);
    const MixedStrategy s = solve_zero_sum_lp(c);
    EXPECT_NEAR(s.value, two_row_value(c), 1e-3);
    expect_certified(c, s);
  }
}

TEST(ZeroSumLp, RandomGamesAreCertified) {
  Gen gen(29);
  for (int t = 0; t < 40; ++t) {
    const std::size_t r = static_cast<std::size_t>(gen.integer(1, 12));
    const std::size_t k = static_cast<std::size_t>(gen.integer(1, 12));
    std::vector<double> d(r * k);
    for (double& v : d) v = static_cast<double>(gen.integer(0, 20));
    const PayoffMatrix c = matrix(r, k, d);
    expect_certified(c, solve_zero_sum_lp(c));
  }
}

TEST(ZeroSumLp, StrategyGenerationAgreesWithDirectSolve) {
  const GameConfig cfg = GameConfig::make(4, 2, {1, 2, 3}, {1, 2, 3});
  const GapGame game(cfg, all_budget_sequences(cfg), all_price_sequences(cfg));
  const MixedStrategy direct = solve_zero_sum_lp(game);
  ZeroSumOptions generated;
  generated.direct_entries = 10;
  const MixedStrategy gen = solve_zero_sum_lp(game, generated);
  EXPECT_GT(gen.oracle_rounds, 0);
  EXPECT_NEAR(gen.value, direct.value, 1e-7);
  expect_certified(game, gen);
}

TEST(ZeroSumLp, SingleUserGameHasValueZero) {
  Gen gen(31);
  for (int t = 0; t < 25; ++t) {
    GameConfig cfg = gen.config(1, 4, 3, 2, 9);
    if (cfg.price_set.front() > cfg.budget_set.front()) {
      cfg.price_set.front() = cfg.budget_set.front();
      std::sort(cfg.price_set.begin(), cfg.price_set.end());
      cfg.price_set.erase(std::unique(cfg.price_set.begin(), cfg.price_set.end()), cfg.price_set.end());
    }
    const auto cols = all_price_sequences(cfg);
    const GapGame game(cfg, all_budget_sequences(cfg), cols);
    const MixedStrategy s = solve_zero_sum_lp(game);
    EXPECT_NEAR(s.value, 0.0, 1e-9);
    for (std::size_t i = 0; i < game.rows(); ++i) EXPECT_EQ(game.entry(i, 0), 0.0);
  }
}

TEST(AcceptanceLp, StaircaseValue) {
  std::vector<Money> seq;
  for (Money v = 1; v <= 5; ++v) seq.insert(seq.end(), 5, v);
  const AcceptanceLpResult r = solve_acceptance_lp(BudgetSequence(seq), 5);
  EXPECT_NEAR(r.value, 7.834, 1e-3);
  EXPECT_LE(std::accumulate(r.accept_prob.begin(), r.accept_prob.end(), 0.0), 5.0 + 1e-9);
  for (double p : r.accept_prob) {
    EXPECT_GE(p, -1e-12);
    EXPECT_LE(p, 1.0 + 1e-12);
  }
}

TEST(AcceptanceLp, AbundantEqualBudgetsGiveZero) {
  const AcceptanceLpResult r = solve_acceptance_lp(BudgetSequence{4, 4, 4}, 3);
  EXPECT_NEAR(r.value, 0.0, 1e-9);
}

TEST(AcceptanceLp, InvariantUnderTrailingZeroBudgets) {
  Gen gen(37);
  for (int t = 0; t < 30; ++t) {
    const int n = static_cast<int>(gen.integer(1, 8));
    std::vector<Money> seq(static_cast<std::size_t>(n));
    for (Money& b : seq) b = gen.integer(1, 9);
    const int r = static_cast<int>(gen.integer(1, 4));
    const double base = solve_acceptance_lp(BudgetSequence(seq), r).value;
    seq.insert(seq.end(), static_cast<std::size_t>(gen.integer(1, 4)), 0);
    EXPECT_NEAR(solve_acceptance_lp(BudgetSequence(seq), r).value, base, 1e-7);
  }
}

TEST(AcceptanceLp, SingleBudgetMatchesClosedForm) {
  // One user: minimize b - b P with P <= 1 gives 0; two users [a, b] with one
  // unit and a < b equalizes a - aP1 against b - aP1 - bP2.
  EXPECT_NEAR(solve_acceptance_lp(BudgetSequence{5}, 1).value, 0.0, 1e-9);
  // z = max(a(1-P1), b - aP1 - bP2) with P1 + P2 <= 1; optimum P2 = 1 - P1
  // and a(1-P1) = (b-a)P1 gives P1 = a/b and z = a(b-a)/b.
  EXPECT_NEAR(solve_acceptance_lp(BudgetSequence{2, 6}, 1).value, 2.0 * 4.0 / 6.0, 1e-9);
}

TEST(FictitiousPlay, LowestPriceGame) {
  const PayoffMatrix c = matrix(2, 2, {0.0, 1.0, 0.0, 0.0});
  const FictitiousPlayResult r = fictitious_play(c, 200);
  EXPECT_NEAR(r.estimate(), 0.0, 1e-2);
  EXPECT_LE(r.lower, 0.0 + 1e-12);
  EXPECT_GE(r.upper, 0.0 - 1e-12);
}

TEST(FictitiousPlay, BracketsSimplexValue) {
  Gen gen(41);
  for (int t = 0; t < 10; ++t) {
    std::vector<double> d(100);
    for (double& v : d) v = gen.real(0.0, 10.0);
    const PayoffMatrix c = matrix(10, 10, d);
    const double v = solve_zero_sum_lp(c).value;
    const FictitiousPlayResult r = fictitious_play(c, 1000);
    EXPECT_LE(r.lower, v + 1e-9);
    EXPECT_GE(r.upper, v - 1e-9);
    EXPECT_EQ(r.iterations, 1000);
  }
}

TEST(FictitiousPlay, Deterministic) {
  const PayoffMatrix c = matrix(2, 3, {3.0, 1.0, 2.0, 0.0, 4.0, 1.0});
  const FictitiousPlayResult a = fictitious_play(c, 500);
  const FictitiousPlayResult b = fictitious_play(c, 500);
  EXPECT_EQ(a.lower, b.lower);
  EXPECT_EQ(a.upper, b.upper);
  EXPECT_EQ(a.tau_p, b.tau_p);
}

}  // namespace
}  // namespace advalloc

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

#ifndef ADVALLOC_EQUILIBRIUM_HPP_
#define ADVALLOC_EQUILIBRIUM_HPP_

// Zero-sum game between the adversary (rows, budget sequences, maximizing the
// gap) and the algorithm (columns, price sequences, minimizing it).

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "advalloc/core.hpp"

namespace advalloc {

class MatrixGame {
 public:
  virtual ~MatrixGame() = default;
  virtual std::size_t rows() const = 0;
  virtual std::size_t cols() const = 0;
  virtual double entry(std::size_t i, std::size_t j) const = 0;
  // out[j] = entry(i, j) for every column.
  virtual void fill_row(std::size_t i, std::span<double> out) const;
  // out[i] = entry(i, j) for every row.
  virtual void fill_col(std::size_t j, std::span<double> out) const;
};

inline constexpr std::size_t kDefaultMatrixCapBytes = std::size_t{2} << 30;

class PayoffMatrix : public MatrixGame {
 public:
  PayoffMatrix(std::size_t rows, std::size_t cols,
               std::size_t cap_bytes = kDefaultMatrixCapBytes);
  PayoffMatrix(std::size_t rows, std::size_t cols, std::vector<double> row_major);

  std::size_t rows() const override { return rows_; }
  std::size_t cols() const override { return cols_; }
  double entry(std::size_t i, std::size_t j) const override { return data_[i * cols_ + j]; }
  double& at(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  void fill_row(std::size_t i, std::span<double> out) const override;
  const std::vector<double>& data() const { return data_; }

 private:
  std::size_t rows_;
  std::size_t cols_;
  std::vector<double> data_;
};

// Evaluates gaps on demand instead of storing the matrix.
class GapGame : public MatrixGame {
 public:
  GapGame(const GameConfig& cfg, std::vector<BudgetSequence> row_strategies,
          std::vector<PriceSequence> col_strategies);

  std::size_t rows() const override { return budgets_.size(); }
  std::size_t cols() const override { return prices_.size(); }
  double entry(std::size_t i, std::size_t j) const override;
  void fill_row(std::size_t i, std::span<double> out) const override;
  void fill_col(std::size_t j, std::span<double> out) const override;

  const std::vector<BudgetSequence>& row_strategies() const { return budgets_; }
  const std::vector<PriceSequence>& col_strategies() const { return prices_; }

 private:
  int resources_;
  std::vector<BudgetSequence> budgets_;
  std::vector<PriceSequence> prices_;
  std::vector<Money> bench_;
};

// Every sequence of length n_users over the set, in lexicographic order.
std::vector<BudgetSequence> all_budget_sequences(const GameConfig& cfg,
                                                 std::size_t cap = 50'000'000);
std::vector<PriceSequence> all_price_sequences(const GameConfig& cfg,
                                               std::size_t cap = 50'000'000);

PayoffMatrix build_payoff_matrix(const GameConfig& cfg,
                                 const std::vector<BudgetSequence>& row_strategies,
                                 const std::vector<PriceSequence>& col_strategies,
                                 std::size_t cap_bytes = kDefaultMatrixCapBytes);

struct MixedStrategy {
  std::vector<double> tau_p;  // over columns
  std::vector<double> tau_b;  // over rows
  double v_p = 0.0;           // max_i (C tau_p)_i
  double v_b = 0.0;           // min_j (tau_b' C)_j
  double value = 0.0;
  long oracle_rounds = 0;     // 0 for a direct solve
};

struct ZeroSumOptions {
  double tolerance = 1e-9;
  // Games with more entries than this are solved by strategy generation.
  std::size_t direct_entries = 250'000;
  long max_rounds = 100'000;
};

MixedStrategy solve_zero_sum_lp(const MatrixGame& game, const ZeroSumOptions& options = {});

struct AcceptanceLpResult {
  double value = 0.0;
  std::vector<double> accept_prob;
};

// Minimal worst-prefix gap over per-user acceptance probabilities.
AcceptanceLpResult solve_acceptance_lp(const BudgetSequence& seq, int n_resources);

struct FictitiousPlayResult {
  double lower = 0.0;
  double upper = 0.0;
  double estimate() const { return 0.5 * (lower + upper); }
  double width() const { return upper - lower; }
  std::vector<double> tau_p;
  std::vector<double> tau_b;
  long iterations = 0;
};

FictitiousPlayResult fictitious_play(const MatrixGame& game, long iterations);

}  // namespace advalloc

#endif  // ADVALLOC_EQUILIBRIUM_HPP_

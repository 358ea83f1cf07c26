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

#include <algorithm>
#include <cmath>
#include <string>

#include "advalloc/error.hpp"
#include "advalloc/simplex.hpp"

namespace advalloc {
namespace {

template <class Seq>
std::vector<Seq> enumerate_sequences(const std::vector<Money>& set, int length,
                                     std::size_t cap, const char* what) {
  std::size_t count = 1;
  for (int i = 0; i < length; ++i) {
    if (count > cap / set.size()) {
      throw TooLarge(std::string("the number of ") + what + " sequences exceeds the cap of " +
                     std::to_string(cap));
    }
    count *= set.size();
  }
  std::vector<Seq> out;
  out.reserve(count);
  std::vector<std::size_t> digits(static_cast<std::size_t>(length), 0);
  std::vector<Money> values(static_cast<std::size_t>(length), set.front());
  for (std::size_t k = 0; k < count; ++k) {
    out.emplace_back(values);
    for (int pos = length - 1; pos >= 0; --pos) {
      const auto p = static_cast<std::size_t>(pos);
      if (++digits[p] < set.size()) {
        values[p] = set[digits[p]];
        break;
      }
      digits[p] = 0;
      values[p] = set.front();
    }
  }
  return out;
}

struct DenseSolution {
  std::vector<double> tau_p;
  std::vector<double> tau_b;
  double value = 0.0;
};

// Row-major rows x cols payoff, row player maximizes.
DenseSolution solve_dense(const std::vector<double>& m, std::size_t rows, std::size_t cols,
                          double tolerance) {
  const double lo = *std::min_element(m.begin(), m.end());
  const double shift = 1.0 - lo;
  LinearProgram lp;
  lp.num_vars = cols;
  lp.objective.assign(cols, -1.0);
  for (std::size_t i = 0; i < rows; ++i) {
    std::vector<double> row(cols);
    for (std::size_t j = 0; j < cols; ++j) row[j] = m[i * cols + j] + shift;
    lp.add_row(std::move(row), RowSense::kLessEqual, 1.0);
  }
  SimplexOptions opts;
  opts.tolerance = tolerance;
  const LpSolution sol = solve_lp(lp, opts);
  if (sol.status != LpStatus::kOptimal) {
    throw NumericalFailure(std::string("matrix game LP failed: ") + to_string(sol.status));
  }
  double sx = 0.0;
  for (double v : sol.x) sx += v;
  double su = 0.0;
  std::vector<double> u(rows);
  for (std::size_t i = 0; i < rows; ++i) {
    u[i] = std::max(0.0, -sol.duals[i]);
    su += u[i];
  }
  if (!(sx > 0.0) || !(su > 0.0)) throw NumericalFailure("matrix game LP returned a zero strategy");
  DenseSolution out;
  out.tau_p.resize(cols);
  for (std::size_t j = 0; j < cols; ++j) out.tau_p[j] = std::max(0.0, sol.x[j]) / sx;
  out.tau_b.resize(rows);
  for (std::size_t i = 0; i < rows; ++i) out.tau_b[i] = u[i] / su;
  out.value = 1.0 / sx - shift;
  return out;
}

std::size_t argmax_first(const std::vector<double>& v) {
  return static_cast<std::size_t>(std::max_element(v.begin(), v.end()) - v.begin());
}

std::size_t argmin_first(const std::vector<double>& v) {
  return static_cast<std::size_t>(std::min_element(v.begin(), v.end()) - v.begin());
}

// Exact payoffs of every pure response to the given mixed strategies.
void response_payoffs(const MatrixGame& game, const std::vector<double>& tau_p,
                      const std::vector<double>& tau_b, std::vector<double>& row_payoff,
                      std::vector<double>& col_payoff) {
  row_payoff.assign(game.rows(), 0.0);
  col_payoff.assign(game.cols(), 0.0);
  std::vector<double> col(game.rows());
  for (std::size_t j = 0; j < game.cols(); ++j) {
    if (tau_p[j] <= 0.0) continue;
    game.fill_col(j, col);
    for (std::size_t i = 0; i < game.rows(); ++i) row_payoff[i] += tau_p[j] * col[i];
  }
  std::vector<double> row(game.cols());
  for (std::size_t i = 0; i < game.rows(); ++i) {
    if (tau_b[i] <= 0.0) continue;
    game.fill_row(i, row);
    for (std::size_t j = 0; j < game.cols(); ++j) col_payoff[j] += tau_b[i] * row[j];
  }
}

MixedStrategy solve_direct(const MatrixGame& game, const ZeroSumOptions& options) {
  const std::size_t rows = game.rows();
  const std::size_t cols = game.cols();
  std::vector<double> m(rows * cols);
  for (std::size_t i = 0; i < rows; ++i) {
    game.fill_row(i, std::span<double>(m.data() + i * cols, cols));
  }
  DenseSolution d = solve_dense(m, rows, cols, options.tolerance);
  MixedStrategy out;
  out.tau_p = std::move(d.tau_p);
  out.tau_b = std::move(d.tau_b);
  out.value = d.value;
  return out;
}

// Strategy generation: solve the restricted game, add both best responses,
// stop once neither side can improve.
MixedStrategy solve_oracle(const MatrixGame& game, const ZeroSumOptions& options) {
  const std::size_t rows = game.rows();
  const std::size_t cols = game.cols();
  std::vector<std::size_t> row_set;
  std::vector<std::size_t> col_set;
  std::vector<std::vector<double>> col_cache;
  std::vector<std::vector<double>> row_cache;
  auto add_col = [&](std::size_t j) {
    col_set.push_back(j);
    col_cache.emplace_back(rows);
    game.fill_col(j, col_cache.back());
  };
  auto add_row = [&](std::size_t i) {
    row_set.push_back(i);
    row_cache.emplace_back(cols);
    game.fill_row(i, row_cache.back());
  };
  add_col(0);
  add_row(argmax_first(col_cache[0]));

  MixedStrategy out;
  std::vector<double> row_payoff(rows);
  std::vector<double> col_payoff(cols);
  for (long round = 1;; ++round) {
    const std::size_t r = row_set.size();
    const std::size_t c = col_set.size();
    std::vector<double> sub(r * c);
    for (std::size_t a = 0; a < r; ++a) {
      for (std::size_t b = 0; b < c; ++b) sub[a * c + b] = col_cache[b][row_set[a]];
    }
    const DenseSolution d = solve_dense(sub, r, c, options.tolerance);

    std::fill(row_payoff.begin(), row_payoff.end(), 0.0);
    for (std::size_t b = 0; b < c; ++b) {
      if (d.tau_p[b] <= 0.0) continue;
      for (std::size_t i = 0; i < rows; ++i) row_payoff[i] += d.tau_p[b] * col_cache[b][i];
    }
    std::fill(col_payoff.begin(), col_payoff.end(), 0.0);
    for (std::size_t a = 0; a < r; ++a) {
      if (d.tau_b[a] <= 0.0) continue;
      for (std::size_t j = 0; j < cols; ++j) col_payoff[j] += d.tau_b[a] * row_cache[a][j];
    }
    const std::size_t best_row = argmax_first(row_payoff);
    const std::size_t best_col = argmin_first(col_payoff);
    const double upper = row_payoff[best_row];
    const double lower = col_payoff[best_col];
    const bool new_row = std::find(row_set.begin(), row_set.end(), best_row) == row_set.end();
    const bool new_col = std::find(col_set.begin(), col_set.end(), best_col) == col_set.end();
    const double scale = std::max(1.0, std::abs(upper));
    const bool grow_row = new_row && upper > d.value + 1e-12 * scale;
    const bool grow_col = new_col && lower < d.value - 1e-12 * scale;
    if (upper - lower <= 1e-9 * scale || (!grow_row && !grow_col) ||
        round >= options.max_rounds) {
      out.tau_p.assign(cols, 0.0);
      for (std::size_t b = 0; b < c; ++b) out.tau_p[col_set[b]] += d.tau_p[b];
      out.tau_b.assign(rows, 0.0);
      for (std::size_t a = 0; a < r; ++a) out.tau_b[row_set[a]] += d.tau_b[a];
      out.value = d.value;
      out.oracle_rounds = round;
      return out;
    }
    if (grow_row) add_row(best_row);
    if (grow_col) add_col(best_col);
  }
}

}  // namespace

void MatrixGame::fill_row(std::size_t i, std::span<double> out) const {
  for (std::size_t j = 0; j < cols(); ++j) out[j] = entry(i, j);
}

void MatrixGame::fill_col(std::size_t j, std::span<double> out) const {
  for (std::size_t i = 0; i < rows(); ++i) out[i] = entry(i, j);
}

PayoffMatrix::PayoffMatrix(std::size_t rows, std::size_t cols, std::size_t cap_bytes)
    : rows_(rows), cols_(cols) {
  if (rows == 0 || cols == 0) throw InvalidInput("payoff matrix must be non-empty");
  if (rows > cap_bytes / sizeof(double) / cols) {
    throw TooLarge("payoff matrix " + std::to_string(rows) + " x " + std::to_string(cols) +
                   " exceeds the memory cap of " + std::to_string(cap_bytes) +
                   " bytes; use fictitious play (--mode fp) or the implicit game");
  }
  data_.assign(rows * cols, 0.0);
}

PayoffMatrix::PayoffMatrix(std::size_t rows, std::size_t cols, std::vector<double> row_major)
    : rows_(rows), cols_(cols), data_(std::move(row_major)) {
  if (rows == 0 || cols == 0) throw InvalidInput("payoff matrix must be non-empty");
  if (data_.size() != rows * cols) throw InvalidInput("payoff matrix data has the wrong size");
}

void PayoffMatrix::fill_row(std::size_t i, std::span<double> out) const {
  std::copy_n(data_.begin() + static_cast<long>(i * cols_), cols_, out.begin());
}

GapGame::GapGame(const GameConfig& cfg, std::vector<BudgetSequence> row_strategies,
                 std::vector<PriceSequence> col_strategies)
    : resources_(cfg.n_resources),
      budgets_(std::move(row_strategies)),
      prices_(std::move(col_strategies)) {
  if (budgets_.empty() || prices_.empty()) throw InvalidInput("strategy lists must be non-empty");
  for (const auto& b : budgets_) validate_budgets(cfg, b);
  for (const auto& p : prices_) {
    validate_prices(cfg, p);
    if (p.size() != static_cast<std::size_t>(cfg.n_users)) {
      throw InvalidInput("price strategies must have exactly n_users prices");
    }
  }
  bench_.reserve(budgets_.size());
  for (const auto& b : budgets_) bench_.push_back(kernel::top_sum(b.view(), resources_));
}

double GapGame::entry(std::size_t i, std::size_t j) const {
  return static_cast<double>(bench_[i] - kernel::welfare(budgets_[i].view(), prices_[j].view(),
                                                         resources_));
}

void GapGame::fill_row(std::size_t i, std::span<double> out) const {
  const auto b = budgets_[i].view();
  for (std::size_t j = 0; j < prices_.size(); ++j) {
    out[j] = static_cast<double>(bench_[i] - kernel::welfare(b, prices_[j].view(), resources_));
  }
}

void GapGame::fill_col(std::size_t j, std::span<double> out) const {
  const auto p = prices_[j].view();
  for (std::size_t i = 0; i < budgets_.size(); ++i) {
    out[i] = static_cast<double>(bench_[i] - kernel::welfare(budgets_[i].view(), p, resources_));
  }
}

std::vector<BudgetSequence> all_budget_sequences(const GameConfig& cfg, std::size_t cap) {
  return enumerate_sequences<BudgetSequence>(cfg.budget_set, cfg.n_users, cap, "budget");
}

std::vector<PriceSequence> all_price_sequences(const GameConfig& cfg, std::size_t cap) {
  return enumerate_sequences<PriceSequence>(cfg.price_set, cfg.n_users, cap, "price");
}

PayoffMatrix build_payoff_matrix(const GameConfig& cfg,
                                 const std::vector<BudgetSequence>& row_strategies,
                                 const std::vector<PriceSequence>& col_strategies,
                                 std::size_t cap_bytes) {
  cfg.validate();
  for (const auto& b : row_strategies) validate_budgets(cfg, b);
  for (const auto& p : col_strategies) validate_prices(cfg, p);
  PayoffMatrix m(row_strategies.size(), col_strategies.size(), cap_bytes);
  for (std::size_t i = 0; i < row_strategies.size(); ++i) {
    for (std::size_t j = 0; j < col_strategies.size(); ++j) {
      m.at(i, j) = static_cast<double>(kernel::gap(row_strategies[i].view(),
                                                   col_strategies[j].view(), cfg.n_resources));
    }
  }
  return m;
}

MixedStrategy solve_zero_sum_lp(const MatrixGame& game, const ZeroSumOptions& options) {
  if (game.rows() == 0 || game.cols() == 0) throw InvalidInput("game must be non-empty");
  MixedStrategy out = game.rows() * game.cols() <= options.direct_entries
                          ? solve_direct(game, options)
                          : solve_oracle(game, options);
  std::vector<double> row_payoff;
  std::vector<double> col_payoff;
  response_payoffs(game, out.tau_p, out.tau_b, row_payoff, col_payoff);
  out.v_p = *std::max_element(row_payoff.begin(), row_payoff.end());
  out.v_b = *std::min_element(col_payoff.begin(), col_payoff.end());
  if (std::abs(out.v_p - out.v_b) > 1e-6) {
    throw NumericalFailure("equilibrium certificate failed: v_p = " + std::to_string(out.v_p) +
                           ", v_b = " + std::to_string(out.v_b));
  }
  return out;
}

AcceptanceLpResult solve_acceptance_lp(const BudgetSequence& seq, int n_resources) {
  if (n_resources < 1) throw InvalidInput("n_resources must be at least 1");
  const std::size_t n = seq.size();
  for (Money b : seq) {
    if (b < 0) throw InvalidInput("budgets must be non-negative");
  }
  // Variables: P_1..P_n, then z.
  LinearProgram lp;
  lp.num_vars = n + 1;
  lp.objective.assign(n + 1, 0.0);
  lp.objective[n] = 1.0;
  // Prefix j's gap: top-R sum of the prefix minus the welfare collected in it.
  for (std::size_t j = 0; j < n; ++j) {
    std::vector<double> row(n + 1, 0.0);
    for (std::size_t i = 0; i <= j; ++i) row[i] = static_cast<double>(seq[i]);
    row[n] = 1.0;
    const Money bench = kernel::top_sum(seq.view().subspan(0, j + 1), n_resources);
    lp.add_row(std::move(row), RowSense::kGreaterEqual, static_cast<double>(bench));
  }
  std::vector<double> total(n + 1, 1.0);
  total[n] = 0.0;
  lp.add_row(std::move(total), RowSense::kLessEqual, static_cast<double>(n_resources));
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<double> row(n + 1, 0.0);
    row[i] = 1.0;
    lp.add_row(std::move(row), RowSense::kLessEqual, 1.0);
  }
  const LpSolution sol = solve_lp(lp);
  if (sol.status != LpStatus::kOptimal) {
    throw NumericalFailure(std::string("acceptance LP failed: ") + to_string(sol.status));
  }
  AcceptanceLpResult out;
  out.value = sol.objective;
  out.accept_prob.assign(sol.x.begin(), sol.x.begin() + static_cast<long>(n));
  return out;
}

FictitiousPlayResult fictitious_play(const MatrixGame& game, long iterations) {
  if (iterations < 1) throw InvalidInput("fictitious play needs at least one iteration");
  const std::size_t rows = game.rows();
  const std::size_t cols = game.cols();
  std::vector<double> row_acc(rows, 0.0);  // sum over t of C(i, col_t)
  std::vector<double> col_acc(cols, 0.0);  // sum over t of C(row_t, j)
  std::vector<long> row_count(rows, 0);
  std::vector<long> col_count(cols, 0);
  std::vector<double> row_buf(cols);
  std::vector<double> col_buf(rows);
  for (long t = 0; t < iterations; ++t) {
    const std::size_t i = argmax_first(row_acc);
    const std::size_t j = argmin_first(col_acc);
    game.fill_row(i, row_buf);
    game.fill_col(j, col_buf);
    for (std::size_t c = 0; c < cols; ++c) col_acc[c] += row_buf[c];
    for (std::size_t r = 0; r < rows; ++r) row_acc[r] += col_buf[r];
    ++row_count[i];
    ++col_count[j];
  }
  FictitiousPlayResult out;
  const double inv = 1.0 / static_cast<double>(iterations);
  out.iterations = iterations;
  out.upper = row_acc[argmax_first(row_acc)] * inv;
  out.lower = col_acc[argmin_first(col_acc)] * inv;
  out.tau_p.resize(cols);
  for (std::size_t c = 0; c < cols; ++c) out.tau_p[c] = col_count[c] * inv;
  out.tau_b.resize(rows);
  for (std::size_t r = 0; r < rows; ++r) out.tau_b[r] = row_count[r] * inv;
  return out;
}

}  // namespace advalloc

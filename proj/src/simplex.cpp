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

#include "advalloc/simplex.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "advalloc/error.hpp"

namespace advalloc {
namespace {

class Tableau {
 public:
  Tableau(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), data_((rows + 1) * (cols + 1), 0.0), basis_(rows, 0) {}

  double& at(std::size_t r, std::size_t c) { return data_[r * (cols_ + 1) + c]; }
  double at(std::size_t r, std::size_t c) const { return data_[r * (cols_ + 1) + c]; }
  double& rhs(std::size_t r) { return at(r, cols_); }
  double& cost(std::size_t c) { return at(rows_, c); }
  double cost(std::size_t c) const { return at(rows_, c); }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::vector<std::size_t>& basis() { return basis_; }

  void pivot(std::size_t r, std::size_t c) {
    const std::size_t width = cols_ + 1;
    double* prow = &data_[r * width];
    const double inv = 1.0 / prow[c];
    for (std::size_t j = 0; j < width; ++j) prow[j] *= inv;
    prow[c] = 1.0;
    for (std::size_t i = 0; i <= rows_; ++i) {
      if (i == r) continue;
      double* row = &data_[i * width];
      const double f = row[c];
      if (f == 0.0) continue;
      for (std::size_t j = 0; j < width; ++j) row[j] -= f * prow[j];
      row[c] = 0.0;
    }
    basis_[r] = c;
  }

  // Rebuilds the objective row as reduced costs of `c` under the current basis.
  void set_objective(const std::vector<double>& c) {
    for (std::size_t j = 0; j <= cols_; ++j) cost(j) = j < cols_ ? c[j] : 0.0;
    for (std::size_t i = 0; i < rows_; ++i) {
      const double cb = c[basis_[i]];
      if (cb == 0.0) continue;
      for (std::size_t j = 0; j <= cols_; ++j) cost(j) -= cb * at(i, j);
    }
  }

 private:
  std::size_t rows_;
  std::size_t cols_;
  std::vector<double> data_;
  std::vector<std::size_t> basis_;
};

// Runs Bland's rule until optimal.  Columns with allowed[c] == false never enter.
LpStatus run_simplex(Tableau& t, const std::vector<bool>& allowed,
                     const SimplexOptions& options, long& pivots) {
  const double tol = options.tolerance;
  for (;;) {
    std::size_t enter = t.cols();
    for (std::size_t c = 0; c < t.cols(); ++c) {
      if (allowed[c] && t.cost(c) < -tol) {
        enter = c;
        break;
      }
    }
    if (enter == t.cols()) return LpStatus::kOptimal;
    std::size_t leave = t.rows();
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t r = 0; r < t.rows(); ++r) {
      const double a = t.at(r, enter);
      if (a <= tol) continue;
      const double ratio = t.rhs(r) / a;
      if (leave == t.rows() || ratio < best - tol) {
        best = ratio;
        leave = r;
      } else if (ratio <= best + tol && t.basis()[r] < t.basis()[leave]) {
        best = std::min(best, ratio);
        leave = r;
      }
    }
    if (leave == t.rows()) return LpStatus::kUnbounded;
    if (++pivots > options.max_pivots) return LpStatus::kIterationLimit;
    t.pivot(leave, enter);
  }
}

}  // namespace

void LinearProgram::add_row(std::vector<double> coeffs, RowSense sense, double b) {
  if (coeffs.size() != num_vars) throw InvalidInput("LP row has the wrong number of coefficients");
  rows.push_back(std::move(coeffs));
  senses.push_back(sense);
  rhs.push_back(b);
}

const char* to_string(LpStatus status) {
  switch (status) {
    case LpStatus::kOptimal: return "optimal";
    case LpStatus::kInfeasible: return "infeasible";
    case LpStatus::kUnbounded: return "unbounded";
    case LpStatus::kIterationLimit: return "iteration limit";
  }
  return "unknown";
}

LpSolution solve_lp(const LinearProgram& lp, const SimplexOptions& options) {
  const std::size_t n = lp.num_vars;
  const std::size_t m = lp.rows.size();
  if (lp.objective.size() != n || lp.senses.size() != m || lp.rhs.size() != m) {
    throw InvalidInput("LP dimensions are inconsistent");
  }

  // Normalize to non-negative right-hand sides.
  std::vector<double> sign(m, 1.0);
  std::vector<RowSense> sense(lp.senses);
  for (std::size_t i = 0; i < m; ++i) {
    if (lp.rhs[i] < 0.0) {
      sign[i] = -1.0;
      if (sense[i] == RowSense::kLessEqual) {
        sense[i] = RowSense::kGreaterEqual;
      } else if (sense[i] == RowSense::kGreaterEqual) {
        sense[i] = RowSense::kLessEqual;
      }
    }
  }

  // Column layout: x, then one slack/surplus per inequality, then one
  // artificial per >= or = row.  unit_col[i] is the column that starts as e_i.
  std::size_t num_slack = 0;
  std::size_t num_art = 0;
  for (RowSense s : sense) {
    if (s != RowSense::kEqual) ++num_slack;
    if (s != RowSense::kLessEqual) ++num_art;
  }
  const std::size_t cols = n + num_slack + num_art;
  Tableau t(m, cols);
  std::vector<std::size_t> unit_col(m);
  std::vector<bool> is_art(cols, false);
  std::size_t next_slack = n;
  std::size_t next_art = n + num_slack;
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < n; ++j) t.at(i, j) = sign[i] * lp.rows[i][j];
    t.rhs(i) = sign[i] * lp.rhs[i];
    if (sense[i] == RowSense::kLessEqual) {
      t.at(i, next_slack) = 1.0;
      unit_col[i] = next_slack++;
    } else {
      if (sense[i] == RowSense::kGreaterEqual) t.at(i, next_slack++) = -1.0;
      t.at(i, next_art) = 1.0;
      is_art[next_art] = true;
      unit_col[i] = next_art++;
    }
    t.basis()[i] = unit_col[i];
  }

  LpSolution sol;
  std::vector<bool> allowed(cols, true);
  if (num_art > 0) {
    std::vector<double> phase1(cols, 0.0);
    for (std::size_t c = 0; c < cols; ++c) phase1[c] = is_art[c] ? 1.0 : 0.0;
    t.set_objective(phase1);
    const LpStatus st = run_simplex(t, allowed, options, sol.pivots);
    if (st == LpStatus::kIterationLimit) {
      sol.status = st;
      return sol;
    }
    double infeas = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
      if (is_art[t.basis()[i]]) infeas += t.rhs(i);
    }
    if (infeas > options.tolerance * (1.0 + static_cast<double>(m))) {
      sol.status = LpStatus::kInfeasible;
      return sol;
    }
    // Drive remaining artificials out of the basis where possible.
    for (std::size_t i = 0; i < m; ++i) {
      if (!is_art[t.basis()[i]]) continue;
      for (std::size_t c = 0; c < cols; ++c) {
        if (!is_art[c] && std::abs(t.at(i, c)) > options.tolerance) {
          t.pivot(i, c);
          ++sol.pivots;
          break;
        }
      }
    }
    for (std::size_t c = 0; c < cols; ++c) {
      if (is_art[c]) allowed[c] = false;
    }
  }

  std::vector<double> phase2(cols, 0.0);
  for (std::size_t j = 0; j < n; ++j) phase2[j] = lp.objective[j];
  t.set_objective(phase2);
  sol.status = run_simplex(t, allowed, options, sol.pivots);
  if (sol.status != LpStatus::kOptimal) return sol;

  sol.x.assign(n, 0.0);
  for (std::size_t i = 0; i < m; ++i) {
    if (t.basis()[i] < n) sol.x[t.basis()[i]] = t.rhs(i);
  }
  sol.objective = 0.0;
  for (std::size_t j = 0; j < n; ++j) sol.objective += lp.objective[j] * sol.x[j];
  sol.duals.assign(m, 0.0);
  for (std::size_t i = 0; i < m; ++i) {
    sol.duals[i] = -t.cost(unit_col[i]) * sign[i];
  }
  return sol;
}

}  // namespace advalloc

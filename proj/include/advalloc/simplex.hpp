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

#ifndef ADVALLOC_SIMPLEX_HPP_
#define ADVALLOC_SIMPLEX_HPP_

// Dense two-phase primal simplex with Bland's rule.
//
//   minimize    c'x
//   subject to  a_i'x (<=, >=, =) b_i,   x >= 0

#include <cstddef>
#include <vector>

namespace advalloc {

enum class RowSense { kLessEqual, kGreaterEqual, kEqual };

struct LinearProgram {
  std::size_t num_vars = 0;
  std::vector<double> objective;             // size num_vars
  std::vector<std::vector<double>> rows;     // each of size num_vars
  std::vector<RowSense> senses;
  std::vector<double> rhs;

  void add_row(std::vector<double> coeffs, RowSense sense, double b);
};

enum class LpStatus { kOptimal, kInfeasible, kUnbounded, kIterationLimit };

struct LpSolution {
  LpStatus status = LpStatus::kOptimal;
  double objective = 0.0;
  std::vector<double> x;
  // Sensitivity of the optimal objective to each right-hand side.
  std::vector<double> duals;
  long pivots = 0;
};

struct SimplexOptions {
  double tolerance = 1e-9;
  long max_pivots = 5'000'000;
};

LpSolution solve_lp(const LinearProgram& lp, const SimplexOptions& options = {});

const char* to_string(LpStatus status);

}  // namespace advalloc

#endif  // ADVALLOC_SIMPLEX_HPP_

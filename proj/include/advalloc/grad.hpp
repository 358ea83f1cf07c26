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

#ifndef ADVALLOC_GRAD_HPP_
#define ADVALLOC_GRAD_HPP_

// Per-slot gradients on output probabilities.  Slots are 0-based here.

#include <span>
#include <vector>

#include "advalloc/core.hpp"

namespace advalloc {

struct DualInfo {
  double lambda_star = 0.0;  // shadow price of one more unit at this slot
  int available = 0;         // units left when the slot's user arrives
};

struct ProbGradient {
  int slot = 0;
  std::vector<double> per_action;  // one entry per price (or budget)
};

// Shadow price of the resource constraint given the realized accepts of
// slots [0, slot).  With y units left and d the remaining budgets
// budgets[slot..] sorted descending (padded with zeros),
// lambda* = (d_y + d_{y+1}) / 2.  With y = 0 the slot cannot sell and
// lambda* is pinned to U.
DualInfo lambda_star(const GameConfig& cfg, const BudgetSequence& budgets,
                     int slot, const std::vector<bool>& realized_accepts);

// d f / d P(price_l) = (b_slot - lambda*) for prices <= b_slot, else 0.  Zero
// everywhere when no units are left.
ProbGradient alg_prob_gradient(const GameConfig& cfg,
                               const BudgetSequence& budgets, int slot,
                               const std::vector<bool>& realized_accepts);

// For every candidate budget b_l at `slot` (budgets before it kept as
// sampled), the gap of the optimal completion of that prefix.
ProbGradient adv_prob_gradient(const GameConfig& cfg,
                               const PriceSequence& prices,
                               const BudgetSequence& sampled_budgets, int slot);

}  // namespace advalloc

#endif  // ADVALLOC_GRAD_HPP_

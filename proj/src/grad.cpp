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

#include "advalloc/grad.hpp"

#include <algorithm>
#include <functional>
#include <string>

#include "advalloc/error.hpp"
#include "advalloc/oracle.hpp"

namespace advalloc {
namespace {

void check_slot(std::size_t length, int slot) {
  if (slot < 0 || static_cast<std::size_t>(slot) >= length) {
    throw InvalidInput("slot " + std::to_string(slot) +
                       " is outside a sequence of length " +
                       std::to_string(length));
  }
}

}  // namespace

DualInfo lambda_star(const GameConfig& cfg, const BudgetSequence& budgets,
                     int slot, const std::vector<bool>& realized_accepts) {
  check_slot(budgets.size(), slot);
  if (realized_accepts.size() < static_cast<std::size_t>(slot)) {
    throw InvalidInput("realized accepts cover fewer slots than requested");
  }
  int used = 0;
  for (int i = 0; i < slot; ++i) used += realized_accepts[i] ? 1 : 0;
  if (used > cfg.n_resources) {
    throw InvalidInput("realized accepts exceed the resource count");
  }
  DualInfo info;
  info.available = cfg.n_resources - used;
  if (info.available == 0) {
    info.lambda_star = static_cast<double>(cfg.upper_bound());
    return info;
  }
  std::vector<Money> rest(budgets.begin() + slot, budgets.end());
  std::sort(rest.begin(), rest.end(), std::greater<>());
  auto order_stat = [&](int k) -> Money {  // 1-based, zero past the end
    return k >= 1 && static_cast<std::size_t>(k) <= rest.size() ? rest[k - 1] : 0;
  };
  const int y = info.available;
  info.lambda_star =
      0.5 * static_cast<double>(order_stat(y) + order_stat(y + 1));
  return info;
}

ProbGradient alg_prob_gradient(const GameConfig& cfg,
                               const BudgetSequence& budgets, int slot,
                               const std::vector<bool>& realized_accepts) {
  const DualInfo dual = lambda_star(cfg, budgets, slot, realized_accepts);
  ProbGradient g;
  g.slot = slot;
  g.per_action.assign(cfg.price_set.size(), 0.0);
  if (dual.available == 0) return g;
  const Money b = budgets[slot];
  const double value = static_cast<double>(b) - dual.lambda_star;
  for (std::size_t l = 0; l < cfg.price_set.size(); ++l) {
    if (cfg.price_set[l] <= b) g.per_action[l] = value;
  }
  return g;
}

ProbGradient adv_prob_gradient(const GameConfig& cfg,
                               const PriceSequence& prices,
                               const BudgetSequence& sampled_budgets, int slot) {
  if (sampled_budgets.size() != prices.size()) {
    throw InvalidInput("budget and price sequences differ in length");
  }
  check_slot(prices.size(), slot);
  ProbGradient g;
  g.slot = slot;
  g.per_action.resize(cfg.budget_set.size());
  std::vector<Money> prefix(sampled_budgets.begin(),
                            sampled_budgets.begin() + slot + 1);
  for (std::size_t l = 0; l < cfg.budget_set.size(); ++l) {
    prefix[slot] = cfg.budget_set[l];
    g.per_action[l] = static_cast<double>(opt_budget(cfg, prices, prefix).gap);
  }
  return g;
}

}  // namespace advalloc

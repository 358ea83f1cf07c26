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

#include "advalloc/oracle.hpp"

#include <algorithm>
#include <numeric>
#include <string>
#include <vector>

#include "advalloc/error.hpp"

namespace advalloc {
namespace {

void check_inputs(const GameConfig& cfg, const PriceSequence& prices,
                  std::span<const Money> prefix) {
  if (cfg.budget_set.empty()) throw InvalidInput("budget_set is empty");
  validate_prices(cfg, prices);
  if (prefix.size() > prices.size()) {
    throw InvalidInput("realized prefix of length " +
                       std::to_string(prefix.size()) +
                       " is longer than the price sequence");
  }
  for (std::size_t i = 0; i < prefix.size(); ++i) {
    if (!cfg.has_budget(prefix[i])) {
      throw InvalidInput("prefix budget " + std::to_string(prefix[i]) +
                         " is not in budget_set");
    }
  }
}

// Largest budget strictly below the price, or min(B) when none exists.
Money starving_budget(const std::vector<Money>& budgets, Money price) {
  auto it = std::lower_bound(budgets.begin(), budgets.end(), price);
  return it == budgets.begin() ? budgets.front() : *(it - 1);
}

// Smallest budget clearing the price, or 0 when none does.
Money clearing_budget(const std::vector<Money>& budgets, Money price) {
  auto it = std::lower_bound(budgets.begin(), budgets.end(), price);
  return it == budgets.end() ? 0 : *it;
}

}  // namespace

CompletionResult opt_budget(const GameConfig& cfg, const PriceSequence& prices,
                            std::span<const Money> realized_prefix) {
  check_inputs(cfg, prices, realized_prefix);
  const std::vector<Money>& budget_set = cfg.budget_set;
  const std::span<const Money> p = prices.view();
  const std::size_t n = p.size();
  const std::size_t first_open = realized_prefix.size();
  const int R = cfg.n_resources;

  int remaining = R;
  for (std::size_t i = 0; i < first_open; ++i) {
    if (remaining > 0 && realized_prefix[i] >= p[i]) --remaining;
  }

  std::vector<Money> starve(realized_prefix.begin(), realized_prefix.end());
  starve.resize(n);
  for (std::size_t i = first_open; i < n; ++i) {
    starve[i] = starving_budget(budget_set, p[i]);
  }
  const Money starve_gap = kernel::gap(starve, p, R);

  std::vector<Money> best_exhaust;
  Money best_exhaust_gap = 0;
  std::vector<Money> candidate;

  if (remaining == 0) {
    // Nothing left to sell: every open slot is rejected, so inflate them all.
    candidate = starve;
    std::fill(candidate.begin() + static_cast<long>(first_open), candidate.end(),
              budget_set.back());
    const Money g = kernel::gap(candidate, p, R);
    if (g > best_exhaust_gap) {
      best_exhaust_gap = g;
      best_exhaust = candidate;
    }
  } else {
    const std::size_t k = static_cast<std::size_t>(remaining);
    std::vector<std::size_t> window;
    for (std::size_t w = first_open; w < n; ++w) {
      if (w - first_open + 1 < k) continue;
      window.resize(w - first_open + 1);
      std::iota(window.begin(), window.end(), first_open);
      std::partial_sort(window.begin(), window.begin() + static_cast<long>(k),
                        window.end(), [&](std::size_t a, std::size_t b) {
                          return p[a] != p[b] ? p[a] < p[b] : a < b;
                        });
      candidate = starve;
      bool feasible = true;
      std::size_t last_sale = first_open;
      for (std::size_t s = 0; s < k; ++s) {
        const std::size_t slot = window[s];
        const Money b = clearing_budget(budget_set, p[slot]);
        if (b == 0) {
          feasible = false;
          break;
        }
        candidate[slot] = b;
        last_sale = std::max(last_sale, slot);
      }
      if (!feasible) continue;
      std::fill(candidate.begin() + static_cast<long>(last_sale) + 1,
                candidate.end(), budget_set.back());
      const Money g = kernel::gap(candidate, p, R);
      if (g > best_exhaust_gap) {
        best_exhaust_gap = g;
        best_exhaust = candidate;
      }
    }
  }

  if (!best_exhaust.empty() && best_exhaust_gap > starve_gap) {
    return {best_exhaust_gap, BudgetSequence(std::move(best_exhaust))};
  }
  return {starve_gap, BudgetSequence(std::move(starve))};
}

CompletionResult brute_force_completion(const GameConfig& cfg,
                                        const PriceSequence& prices,
                                        std::span<const Money> realized_prefix,
                                        std::uint64_t cap) {
  check_inputs(cfg, prices, realized_prefix);
  const std::span<const Money> p = prices.view();
  const std::size_t n = p.size();
  const std::size_t first_open = realized_prefix.size();
  const std::size_t open = n - first_open;
  const std::size_t m = cfg.budget_set.size();

  std::uint64_t total = 1;
  for (std::size_t i = 0; i < open; ++i) {
    if (total > cap / m) {
      throw TooLarge("brute-force completion needs " + std::to_string(m) + "^" +
                     std::to_string(open) + " sequences, above the cap of " +
                     std::to_string(cap));
    }
    total *= m;
  }
  if (total > cap) {
    throw TooLarge("brute-force completion needs " + std::to_string(total) +
                   " sequences, above the cap of " + std::to_string(cap));
  }

  std::vector<Money> seq(realized_prefix.begin(), realized_prefix.end());
  seq.resize(n, cfg.budget_set.front());
  std::vector<std::size_t> digit(open, 0);
  Money best_gap = -1;
  std::vector<Money> best;
  // Odometer with the last slot fastest: visits completions in
  // lexicographic order, so the first maximizer is the smallest.
  for (std::uint64_t count = 0; count < total; ++count) {
    const Money g = kernel::gap(seq, p, cfg.n_resources);
    if (g > best_gap) {
      best_gap = g;
      best = seq;
    }
    for (std::size_t d = open; d-- > 0;) {
      if (++digit[d] < m) {
        seq[first_open + d] = cfg.budget_set[digit[d]];
        break;
      }
      digit[d] = 0;
      seq[first_open + d] = cfg.budget_set.front();
    }
  }
  return {best_gap, BudgetSequence(std::move(best))};
}

}  // namespace advalloc

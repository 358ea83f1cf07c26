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

#include "advalloc/core.hpp"

#include <algorithm>
#include <charconv>
#include <numeric>
#include <sstream>

#include "advalloc/error.hpp"

namespace advalloc {
namespace {

void check_strictly_increasing_positive(const std::vector<Money>& values,
                                        const char* name) {
  if (values.empty()) {
    throw InvalidInput(std::string(name) + " must not be empty");
  }
  if (values.front() <= 0) {
    throw InvalidInput(std::string(name) + " entries must be positive");
  }
  for (std::size_t i = 1; i < values.size(); ++i) {
    if (values[i] <= values[i - 1]) {
      throw InvalidInput(std::string(name) +
                         " must be strictly increasing without duplicates");
    }
  }
}

template <class Seq>
void check_length(const GameConfig& cfg, const Seq& seq, const char* name) {
  if (seq.size() > static_cast<std::size_t>(cfg.n_users)) {
    throw InvalidInput(std::string(name) + " has " +
                       std::to_string(seq.size()) + " entries but n_users is " +
                       std::to_string(cfg.n_users));
  }
}

}  // namespace

GameConfig GameConfig::make(int n_users, int n_resources,
                            std::vector<Money> price_set,
                            std::vector<Money> budget_set) {
  GameConfig cfg{n_users, n_resources, std::move(price_set),
                 std::move(budget_set)};
  cfg.validate();
  return cfg;
}

bool GameConfig::has_price(Money p) const {
  return std::binary_search(price_set.begin(), price_set.end(), p);
}

bool GameConfig::has_budget(Money b) const {
  return std::binary_search(budget_set.begin(), budget_set.end(), b);
}

void GameConfig::validate() const {
  if (n_users < 1) throw InvalidInput("n_users must be at least 1");
  if (n_resources < 1) throw InvalidInput("n_resources must be at least 1");
  check_strictly_increasing_positive(price_set, "price_set");
  check_strictly_increasing_positive(budget_set, "budget_set");
}

void validate_budgets(const GameConfig& cfg, const BudgetSequence& budgets) {
  check_length(cfg, budgets, "budget sequence");
  for (std::size_t i = 0; i < budgets.size(); ++i) {
    if (!cfg.has_budget(budgets[i])) {
      throw InvalidInput("budget " + std::to_string(budgets[i]) + " at slot " +
                         std::to_string(i + 1) + " is not in budget_set");
    }
  }
}

void validate_prices(const GameConfig& cfg, const PriceSequence& prices) {
  check_length(cfg, prices, "price sequence");
  for (std::size_t i = 0; i < prices.size(); ++i) {
    if (!cfg.has_price(prices[i])) {
      throw InvalidInput("price " + std::to_string(prices[i]) + " at slot " +
                         std::to_string(i + 1) + " is not in price_set");
    }
  }
}

Benchmark benchmark(const GameConfig& cfg, const BudgetSequence& budgets) {
  validate_budgets(cfg, budgets);
  const std::size_t n = budgets.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  // Stable: among equal budgets the earlier slot ranks first.
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return budgets[a] > budgets[b];
  });
  Benchmark result;
  result.flags.assign(n, false);
  const std::size_t take =
      std::min(n, static_cast<std::size_t>(cfg.n_resources));
  for (std::size_t k = 0; k < take; ++k) {
    result.flags[order[k]] = true;
    result.value += budgets[order[k]];
  }
  return result;
}

AllocationTrace simulate_alg(const GameConfig& cfg,
                             const BudgetSequence& budgets,
                             const PriceSequence& prices) {
  if (budgets.size() != prices.size()) {
    throw InvalidInput("budget sequence has " + std::to_string(budgets.size()) +
                       " entries but price sequence has " +
                       std::to_string(prices.size()));
  }
  validate_prices(cfg, prices);
  Benchmark bench = benchmark(cfg, budgets);

  AllocationTrace trace;
  const std::size_t n = budgets.size();
  trace.accepted.assign(n, false);
  trace.resources_before.assign(n, 0);
  int available = cfg.n_resources;
  for (std::size_t i = 0; i < n; ++i) {
    trace.resources_before[i] = available;
    if (available > 0 && budgets[i] >= prices[i]) {
      trace.accepted[i] = true;
      trace.alg_welfare += budgets[i];
      --available;
    }
  }
  trace.benchmark_flags = std::move(bench.flags);
  trace.benchmark_value = bench.value;
  trace.gap = trace.benchmark_value - trace.alg_welfare;
  return trace;
}

Money gap(const GameConfig& cfg, const BudgetSequence& budgets,
          const PriceSequence& prices) {
  return simulate_alg(cfg, budgets, prices).gap;
}

namespace kernel {

Money welfare(std::span<const Money> budgets, std::span<const Money> prices,
              int n_resources) {
  Money total = 0;
  int available = n_resources;
  for (std::size_t i = 0; i < budgets.size() && available > 0; ++i) {
    if (budgets[i] >= prices[i]) {
      total += budgets[i];
      --available;
    }
  }
  return total;
}

Money top_sum(std::span<const Money> budgets, int count) {
  const std::size_t take =
      std::min(budgets.size(), static_cast<std::size_t>(std::max(count, 0)));
  if (take == budgets.size()) {
    return std::accumulate(budgets.begin(), budgets.end(), Money{0});
  }
  std::vector<Money> sorted(budgets.begin(), budgets.end());
  std::nth_element(sorted.begin(), sorted.begin() + static_cast<long>(take),
                   sorted.end(), std::greater<>());
  return std::accumulate(sorted.begin(), sorted.begin() + static_cast<long>(take),
                         Money{0});
}

}  // namespace kernel

std::string format_sequence(std::span<const Money> values) {
  std::string out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(values[i]);
  }
  return out;
}

std::vector<Money> parse_sequence(std::string_view text) {
  std::vector<Money> out;
  std::size_t pos = 0;
  auto is_space = [](char c) { return c == ' ' || c == '\t' || c == '\r'; };
  while (pos < text.size()) {
    while (pos < text.size() && (is_space(text[pos]) || text[pos] == '[')) ++pos;
    if (pos >= text.size() || text[pos] == ']') break;
    std::size_t end = pos;
    while (end < text.size() && text[end] != ',' && text[end] != ']' &&
           !is_space(text[end])) {
      ++end;
    }
    Money value = 0;
    auto [ptr, ec] = std::from_chars(text.data() + pos, text.data() + end, value);
    if (ec != std::errc() || ptr != text.data() + end) {
      throw InvalidInput("malformed integer '" +
                         std::string(text.substr(pos, end - pos)) + "'");
    }
    out.push_back(value);
    pos = end;
    while (pos < text.size() && is_space(text[pos])) ++pos;
    if (pos < text.size() && (text[pos] == ',' || text[pos] == ']')) ++pos;
  }
  return out;
}

}  // namespace advalloc

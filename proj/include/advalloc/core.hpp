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

#ifndef ADVALLOC_CORE_HPP_
#define ADVALLOC_CORE_HPP_

// Game mechanics of single-unit posted-price allocation: R identical units,
// users arrive one at a time, each is shown a price and takes a unit iff
// its budget is at least that price and a unit is still available.

#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace advalloc {

// Game values are integers; every instance in the experiments is integral
// and exact arithmetic keeps gap regressions bit-exact.
using Money = std::int64_t;

struct GameConfig {
  int n_users = 0;
  int n_resources = 0;
  std::vector<Money> price_set;   // strictly increasing, positive
  std::vector<Money> budget_set;  // strictly increasing, positive

  static GameConfig make(int n_users, int n_resources,
                         std::vector<Money> price_set,
                         std::vector<Money> budget_set);

  Money upper_bound() const { return budget_set.back(); }
  Money lower_bound() const { return budget_set.front(); }
  Money max_price() const { return price_set.back(); }
  int num_prices() const { return static_cast<int>(price_set.size()); }
  int num_budgets() const { return static_cast<int>(budget_set.size()); }

  bool has_price(Money p) const;
  bool has_budget(Money b) const;

  // Throws InvalidInput describing the first violated invariant.
  void validate() const;
};

// A value-typed sequence of amounts.  The tag keeps budget and price
// sequences from being swapped at call sites.
template <class Tag>
class Sequence {
 public:
  Sequence() = default;
  explicit Sequence(std::vector<Money> values) : values_(std::move(values)) {}
  Sequence(std::initializer_list<Money> values) : values_(values) {}

  std::size_t size() const { return values_.size(); }
  bool empty() const { return values_.empty(); }
  Money operator[](std::size_t i) const { return values_[i]; }
  Money& operator[](std::size_t i) { return values_[i]; }
  auto begin() const { return values_.begin(); }
  auto end() const { return values_.end(); }
  std::span<const Money> view() const { return values_; }
  const std::vector<Money>& values() const { return values_; }
  std::vector<Money>& values() { return values_; }

  friend bool operator==(const Sequence&, const Sequence&) = default;
  friend auto operator<=>(const Sequence&, const Sequence&) = default;

 private:
  std::vector<Money> values_;
};

struct BudgetTag {};
struct PriceTag {};
using BudgetSequence = Sequence<BudgetTag>;
using PriceSequence = Sequence<PriceTag>;

// Sequences may be shorter than n_users: the algorithm only knows the
// maximum length, so prefix strategies are legal inputs.
void validate_budgets(const GameConfig& cfg, const BudgetSequence& budgets);
void validate_prices(const GameConfig& cfg, const PriceSequence& prices);

struct Benchmark {
  Money value = 0;
  std::vector<bool> flags;  // slots the offline optimum serves
};

struct AllocationTrace {
  std::vector<bool> accepted;
  std::vector<int> resources_before;
  Money alg_welfare = 0;
  std::vector<bool> benchmark_flags;
  Money benchmark_value = 0;
  Money gap = 0;
};

// Plays the posted prices against the budgets in arrival order.
AllocationTrace simulate_alg(const GameConfig& cfg,
                             const BudgetSequence& budgets,
                             const PriceSequence& prices);

// Offline optimum: the min(R, N) largest budgets, ties to the earliest slot.
Benchmark benchmark(const GameConfig& cfg, const BudgetSequence& budgets);

Money gap(const GameConfig& cfg, const BudgetSequence& budgets,
          const PriceSequence& prices);

// Unchecked kernels for hot loops (payoff matrices, oracles).  Callers
// guarantee equal lengths.
namespace kernel {
Money welfare(std::span<const Money> budgets, std::span<const Money> prices,
              int n_resources);
Money top_sum(std::span<const Money> budgets, int count);
inline Money gap(std::span<const Money> budgets, std::span<const Money> prices,
                 int n_resources) {
  return top_sum(budgets, n_resources) -
         welfare(budgets, prices, n_resources);
}
}  // namespace kernel

// Comma-separated integers, e.g. "1,1,2,3".
std::string format_sequence(std::span<const Money> values);
std::vector<Money> parse_sequence(std::string_view text);

}  // namespace advalloc

#endif  // ADVALLOC_CORE_HPP_

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

#ifndef ADVALLOC_TESTS_SUPPORT_HPP_
#define ADVALLOC_TESTS_SUPPORT_HPP_

// Reference implementations and generators shared by the test binaries.
// Everything here is written independently of the library code paths it is
// used to check.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <numeric>
#include <random>
#include <vector>

#include "advalloc/core.hpp"

namespace advalloc::testing {

inline Money ref_welfare(const std::vector<Money>& b, const std::vector<Money>& p, int r) {
  Money w = 0;
  int left = r;
  for (std::size_t i = 0; i < b.size(); ++i) {
    if (left > 0 && b[i] >= p[i]) {
      w += b[i];
      --left;
    }
  }
  return w;
}

inline Money ref_benchmark(std::vector<Money> b, int r) {
  std::sort(b.begin(), b.end(), std::greater<>());
  Money s = 0;
  for (std::size_t i = 0; i < b.size() && i < static_cast<std::size_t>(r); ++i) s += b[i];
  return s;
}

inline Money ref_gap(const std::vector<Money>& b, const std::vector<Money>& p, int r) {
  return ref_benchmark(b, r) - ref_welfare(b, p, r);
}

// Max gap over every completion of `prefix` to prices.size() slots.
inline Money ref_max_gap(const std::vector<Money>& budget_set, const std::vector<Money>& prices,
                         std::vector<Money> seq, int r) {
  if (seq.size() == prices.size()) return ref_gap(seq, prices, r);
  Money best = -1;
  for (Money b : budget_set) {
    seq.push_back(b);
    best = std::max(best, ref_max_gap(budget_set, prices, seq, r));
    seq.pop_back();
  }
  return best;
}

class Gen {
 public:
  explicit Gen(std::uint64_t seed) : rng_(seed) {}

  int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }
  double real(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }

  // Sorted distinct values from 1..max_value.
  std::vector<Money> set(int size, int max_value) {
    std::vector<Money> pool(static_cast<std::size_t>(max_value));
    std::iota(pool.begin(), pool.end(), Money{1});
    std::shuffle(pool.begin(), pool.end(), rng_);
    pool.resize(static_cast<std::size_t>(size));
    std::sort(pool.begin(), pool.end());
    return pool;
  }

  std::vector<Money> from(const std::vector<Money>& values, int length) {
    std::vector<Money> out(static_cast<std::size_t>(length));
    for (Money& v : out) v = values[static_cast<std::size_t>(integer(0, static_cast<int>(values.size()) - 1))];
    return out;
  }

  GameConfig config(int max_users, int max_prices, int max_budgets, int max_resources,
                    int max_value) {
    const int n = integer(1, max_users);
    const int r = integer(1, max_resources);
    auto prices = set(integer(1, max_prices), max_value);
    auto budgets = set(integer(1, max_budgets), max_value);
    return GameConfig::make(n, r, prices, budgets);
  }

  std::mt19937_64& engine() { return rng_; }

 private:
  std::mt19937_64 rng_;
};

}  // namespace advalloc::testing

#endif  // ADVALLOC_TESTS_SUPPORT_HPP_

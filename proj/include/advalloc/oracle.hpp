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

#ifndef ADVALLOC_ORACLE_HPP_
#define ADVALLOC_ORACLE_HPP_

#include <cstdint>
#include <span>

#include "advalloc/core.hpp"

namespace advalloc {

struct CompletionResult {
  Money gap = 0;
  BudgetSequence full_sequence;  // realized prefix followed by the completion
};

// Gap-maximizing completion of a realized budget prefix against a fixed
// price sequence, in polynomial time.  Two families are enough:
//
//  (a) starve: every open slot gets the largest budget strictly below its
//      price (min(B) when there is none), so the algorithm sells as little
//      as possible while the benchmark collects what it can;
//  (b) exhaust then spike: for every window l..w holding at least k open
//      slots (k = units left after the prefix), sell the k cheapest slots of
//      the window at the smallest budget clearing their price, starve the
//      rest of the window, and give max(B) to every slot after the last sale.
//
// Ties between (a) and (b) go to (a); among (b) candidates the first
// strictly better window wins.  The completion length is prices.size().
CompletionResult opt_budget(const GameConfig& cfg, const PriceSequence& prices,
                            std::span<const Money> realized_prefix);

inline constexpr std::uint64_t kDefaultBruteForceCap = 10'000'000;

// Enumerates all m^(N-l) completions; ties go to the lexicographically
// smallest sequence.  Throws TooLarge above the cap.
CompletionResult brute_force_completion(
    const GameConfig& cfg, const PriceSequence& prices,
    std::span<const Money> realized_prefix,
    std::uint64_t cap = kDefaultBruteForceCap);

}  // namespace advalloc

#endif  // ADVALLOC_ORACLE_HPP_

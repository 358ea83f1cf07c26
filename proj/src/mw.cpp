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

#include "advalloc/mw.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "advalloc/error.hpp"

namespace advalloc {

MwState MwState::uniform(std::size_t count, double eta) {
  if (count == 0) throw InvalidInput("multiplicative weights need at least one strategy");
  if (eta < 0.0) throw InvalidInput("multiplicative-weights eta must be non-negative");
  return MwState{std::vector<double>(count, 1.0), eta};
}

std::vector<double> MwState::distribution() const {
  const double total = std::accumulate(weights.begin(), weights.end(), 0.0);
  std::vector<double> p(weights.size());
  for (std::size_t i = 0; i < weights.size(); ++i) p[i] = weights[i] / total;
  return p;
}

std::vector<double> normalize_payoffs(std::span<const double> payoffs) {
  std::vector<double> r(payoffs.size(), 0.5);
  if (payoffs.empty()) return r;
  const auto [lo, hi] = std::minmax_element(payoffs.begin(), payoffs.end());
  const double span = *hi - *lo;
  if (span <= 0.0) return r;
  for (std::size_t i = 0; i < payoffs.size(); ++i) r[i] = (payoffs[i] - *lo) / span;
  return r;
}

MwState mw_update(MwState state, std::span<const double> payoffs) {
  if (payoffs.size() != state.weights.size()) {
    throw InvalidInput("payoff vector has " + std::to_string(payoffs.size()) +
                       " entries for " + std::to_string(state.weights.size()) +
                       " strategies");
  }
  const std::vector<double> r = normalize_payoffs(payoffs);
  for (std::size_t i = 0; i < r.size(); ++i) state.weights[i] *= 1.0 + state.eta * r[i];
  // Rescale so long runs never overflow; the distribution is unchanged.
  const double top = *std::max_element(state.weights.begin(), state.weights.end());
  if (top > 1e100) {
    for (double& w : state.weights) w = std::max(w / top, 1e-300);
  }
  return state;
}

}  // namespace advalloc

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

#ifndef ADVALLOC_MW_HPP_
#define ADVALLOC_MW_HPP_

#include <span>
#include <vector>

namespace advalloc {

// Multiplicative weights over a finite list of pure strategies:
// w(a) <- w(a) * (1 + eta * r(a)) with r mapped affinely onto [0, 1]
// per update (a constant payoff vector maps to 0.5 everywhere).
struct MwState {
  std::vector<double> weights;
  double eta = 0.01;

  static MwState uniform(std::size_t count, double eta);
  std::vector<double> distribution() const;
};

std::vector<double> normalize_payoffs(std::span<const double> payoffs);

// payoffs are utilities of each pure strategy (higher is better).
MwState mw_update(MwState state, std::span<const double> payoffs);

}  // namespace advalloc

#endif  // ADVALLOC_MW_HPP_

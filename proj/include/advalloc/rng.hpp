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

#ifndef ADVALLOC_RNG_HPP_
#define ADVALLOC_RNG_HPP_

#include <cstdint>
#include <random>
#include <span>
#include <string_view>

namespace advalloc {

using Rng = std::mt19937_64;

// Deterministic stream for (seed, label).  All randomness in a run flows
// from one root seed through labeled streams.
Rng derive_rng(std::uint64_t seed, std::string_view stream_label);
Rng derive_rng(std::uint64_t seed, std::string_view stream_label,
               std::uint64_t index);

double uniform01(Rng& rng);

// Index drawn from unnormalized non-negative weights.
std::size_t sample_categorical(Rng& rng, std::span<const double> weights);

}  // namespace advalloc

#endif  // ADVALLOC_RNG_HPP_

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

#ifndef ADVALLOC_CONFIG_HPP_
#define ADVALLOC_CONFIG_HPP_

// Run configuration files: one `key = value` per line, `#` starts a comment.
//
//   n_users = 25
//   n_resources = 5
//   price_set = 1..5
//   budget_set = 1..5
//   sequence = 1*5, 2*5, 3*5, 4*5, 5*5
//   adversary_strategies = prefixes
//   algorithm_strategies = 1,1,2,2,3,3,3 ; 1,1,1,2,2,2,3
//
// List items are integers, ranges `a..b`, or repeats `v*k`.  Training keys
// (episodes, batch, xi, lr_alg, lr_adv, mw_eta, mw_rollouts, grad_clip,
// snapshot_window, trailing_window, seed) and network keys (alg_hidden,
// adv_hidden, latent_dim, encoder_dim) are optional.

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "advalloc/core.hpp"
#include "advalloc/train.hpp"

namespace advalloc {

struct RunConfig {
  GameConfig game;
  std::optional<BudgetSequence> sequence;
  std::vector<BudgetSequence> adversary_strategies;
  std::vector<PriceSequence> algorithm_strategies;
  TrainConfig train;

  // Canonical key = value text, stable across equivalent inputs.
  std::string canonical() const;
};

std::vector<Money> parse_list(std::string_view text);

RunConfig parse_run_config(std::string_view text);
RunConfig load_run_config(const std::string& path);

// One sequence per non-empty, non-comment line, in list syntax.
std::vector<std::vector<Money>> load_sequence_file(const std::string& path,
                                                   std::string* kind = nullptr);

}  // namespace advalloc

#endif  // ADVALLOC_CONFIG_HPP_

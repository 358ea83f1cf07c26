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

#include "advalloc/snapshot.hpp"

#include "advalloc/error.hpp"

namespace advalloc {

SnapshotRing::SnapshotRing(PolicyShape shape, std::size_t capacity)
    : shape_(std::move(shape)), capacity_(capacity) {
  if (capacity_ == 0) throw InvalidInput("snapshot window must be positive");
}

void SnapshotRing::push(long episode, std::span<const double> params) {
  if (params.size() != shape_.num_params()) {
    throw InvalidInput("snapshot does not match the ring's policy layout");
  }
  if (entries_.size() == capacity_) entries_.pop_front();
  entries_.push_back({episode, std::vector<double>(params.begin(), params.end())});
}

MlpPolicy SnapshotRing::policy_at(std::size_t i) const {
  MlpPolicy policy(shape_);
  policy.set_params(entries_.at(i).params);
  return policy;
}

MlpPolicy SnapshotRing::sample(Rng& rng) const {
  if (entries_.empty()) throw InvalidInput("snapshot ring is empty");
  std::uniform_int_distribution<std::size_t> pick(0, entries_.size() - 1);
  return policy_at(pick(rng));
}

}  // namespace advalloc

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

#ifndef ADVALLOC_SNAPSHOT_HPP_
#define ADVALLOC_SNAPSHOT_HPP_

#include <cstddef>
#include <deque>
#include <vector>

#include "advalloc/nn.hpp"
#include "advalloc/rng.hpp"

namespace advalloc {

struct TrainSnapshot {
  long episode = 0;
  std::vector<double> params;
};

// Keeps the most recent `capacity` parameter vectors of one policy.
class SnapshotRing {
 public:
  SnapshotRing(PolicyShape shape, std::size_t capacity);

  void push(long episode, std::span<const double> params);

  const PolicyShape& shape() const { return shape_; }
  std::size_t capacity() const { return capacity_; }
  std::size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }
  const TrainSnapshot& at(std::size_t i) const { return entries_.at(i); }
  const TrainSnapshot& latest() const { return entries_.back(); }

  // Uniformly chosen snapshot, materialized as a policy.
  MlpPolicy sample(Rng& rng) const;
  MlpPolicy policy_at(std::size_t i) const;

 private:
  PolicyShape shape_;
  std::size_t capacity_;
  std::deque<TrainSnapshot> entries_;
};

}  // namespace advalloc

#endif  // ADVALLOC_SNAPSHOT_HPP_

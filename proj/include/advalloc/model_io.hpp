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

#ifndef ADVALLOC_MODEL_IO_HPP_
#define ADVALLOC_MODEL_IO_HPP_

// On-disk layout of a policy:
//
//   advalloc-model
//   format_version 1
//   kind algorithm|adversary
//   slope <hex float>
//   history_rows <int>  feature_dim <int>  encoder_dim <int>  input_dim <int>
//   hidden <w1> <w2> ...
//   heads <count> <size>
//   params <count>
//   data
//   <count little-endian IEEE-754 doubles, row-major per matrix>
//
// A snapshot ring file is a header line "advalloc-snapshots", the format
// version, the entry count, then per entry "episode <e>" followed by one
// model block.

#include <filesystem>
#include <iosfwd>

#include "advalloc/nn.hpp"
#include "advalloc/snapshot.hpp"

namespace advalloc {

inline constexpr int kModelFormatVersion = 1;

void write_model(std::ostream& out, const MlpPolicy& policy);
MlpPolicy read_model(std::istream& in);

void save_model(const std::filesystem::path& path, const MlpPolicy& policy);
// Throws CorruptFile on truncation or malformed headers and
// VersionMismatch when the file's format version differs.
MlpPolicy load_model(const std::filesystem::path& path);

void save_snapshots(const std::filesystem::path& path, const SnapshotRing& ring);
SnapshotRing load_snapshots(const std::filesystem::path& path);

}  // namespace advalloc

#endif  // ADVALLOC_MODEL_IO_HPP_

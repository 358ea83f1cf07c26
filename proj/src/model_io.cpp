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

#include "advalloc/model_io.hpp"

#include <bit>
#include <cstdint>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

#include "advalloc/error.hpp"

namespace advalloc {
namespace {

static_assert(std::endian::native == std::endian::little,
              "model files store little-endian doubles");

std::string hex_double(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%a", x);
  return buf;
}

std::string read_line(std::istream& in, const char* what) {
  std::string line;
  if (!std::getline(in, line)) {
    throw CorruptFile(std::string("model file truncated before ") + what);
  }
  return line;
}

// Reads "<key> values..." and returns the value part.
std::istringstream expect_key(std::istream& in, const std::string& key) {
  const std::string line = read_line(in, key.c_str());
  std::istringstream fields(line);
  std::string got;
  fields >> got;
  if (got != key) {
    throw CorruptFile("expected '" + key + "' in model header, found '" + line + "'");
  }
  return fields;
}

template <class T>
T read_value(std::istream& in, const std::string& key) {
  std::istringstream fields = expect_key(in, key);
  T value{};
  if (!(fields >> value)) throw CorruptFile("malformed value for '" + key + "'");
  return value;
}

void write_params(std::ostream& out, std::span<const double> params) {
  out.write(reinterpret_cast<const char*>(params.data()),
            static_cast<std::streamsize>(params.size() * sizeof(double)));
}

void read_params(std::istream& in, std::span<double> params) {
  const auto bytes = static_cast<std::streamsize>(params.size() * sizeof(double));
  in.read(reinterpret_cast<char*>(params.data()), bytes);
  if (in.gcount() != bytes) {
    throw CorruptFile("model file truncated: expected " + std::to_string(params.size()) +
                      " parameters");
  }
}

void write_shape(std::ostream& out, const PolicyShape& s, std::size_t num_params) {
  out << "advalloc-model\n";
  out << "format_version " << kModelFormatVersion << "\n";
  out << "kind " << (s.kind == PolicyKind::kAlgorithm ? "algorithm" : "adversary") << "\n";
  out << "slope " << hex_double(s.slope) << "\n";
  out << "history_rows " << s.history_rows << "\n";
  out << "feature_dim " << s.feature_dim << "\n";
  out << "encoder_dim " << s.encoder_dim << "\n";
  out << "input_dim " << s.input_dim << "\n";
  out << "hidden";
  for (int w : s.hidden) out << ' ' << w;
  out << "\n";
  out << "heads " << s.num_heads << ' ' << s.head_size << "\n";
  out << "params " << num_params << "\n";
  out << "data\n";
}

PolicyShape read_shape(std::istream& in, std::size_t& num_params) {
  const std::string magic = read_line(in, "magic");
  if (magic != "advalloc-model") throw CorruptFile("not an advalloc model file");
  const int version = read_value<int>(in, "format_version");
  if (version != kModelFormatVersion) {
    throw VersionMismatch("model format version " + std::to_string(version) +
                          " is not supported by this build (expected version " +
                          std::to_string(kModelFormatVersion) + ")");
  }
  PolicyShape s;
  const std::string kind = read_value<std::string>(in, "kind");
  if (kind == "algorithm") {
    s.kind = PolicyKind::kAlgorithm;
  } else if (kind == "adversary") {
    s.kind = PolicyKind::kAdversary;
  } else {
    throw CorruptFile("unknown policy kind '" + kind + "'");
  }
  const std::string slope = read_value<std::string>(in, "slope");
  char* end = nullptr;
  s.slope = std::strtod(slope.c_str(), &end);
  if (end == slope.c_str()) throw CorruptFile("malformed slope");
  s.history_rows = read_value<int>(in, "history_rows");
  s.feature_dim = read_value<int>(in, "feature_dim");
  s.encoder_dim = read_value<int>(in, "encoder_dim");
  s.input_dim = read_value<int>(in, "input_dim");
  {
    std::istringstream fields = expect_key(in, "hidden");
    int w = 0;
    while (fields >> w) s.hidden.push_back(w);
  }
  {
    std::istringstream fields = expect_key(in, "heads");
    if (!(fields >> s.num_heads >> s.head_size)) throw CorruptFile("malformed heads line");
  }
  num_params = read_value<std::size_t>(in, "params");
  if (read_line(in, "data") != "data") throw CorruptFile("missing data marker");
  if (num_params != s.num_params()) {
    throw CorruptFile("parameter count " + std::to_string(num_params) +
                      " does not match the declared layout (" +
                      std::to_string(s.num_params()) + ")");
  }
  return s;
}

std::ofstream open_out(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw InvalidInput("cannot open '" + path.string() + "' for writing");
  return out;
}

std::ifstream open_in(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidInput("cannot open '" + path.string() + "'");
  return in;
}

}  // namespace

void write_model(std::ostream& out, const MlpPolicy& policy) {
  write_shape(out, policy.shape(), policy.num_params());
  write_params(out, policy.params());
}

MlpPolicy read_model(std::istream& in) {
  std::size_t count = 0;
  MlpPolicy policy(read_shape(in, count));
  std::vector<double> params(count);
  read_params(in, params);
  policy.set_params(params);
  return policy;
}

void save_model(const std::filesystem::path& path, const MlpPolicy& policy) {
  std::ofstream out = open_out(path);
  write_model(out, policy);
  if (!out) throw InvalidInput("failed writing '" + path.string() + "'");
}

MlpPolicy load_model(const std::filesystem::path& path) {
  std::ifstream in = open_in(path);
  return read_model(in);
}

void save_snapshots(const std::filesystem::path& path, const SnapshotRing& ring) {
  std::ofstream out = open_out(path);
  out << "advalloc-snapshots\n";
  out << "format_version " << kModelFormatVersion << "\n";
  out << "capacity " << ring.capacity() << "\n";
  out << "count " << ring.size() << "\n";
  for (std::size_t i = 0; i < ring.size(); ++i) {
    const TrainSnapshot& snap = ring.at(i);
    out << "episode " << snap.episode << "\n";
    write_shape(out, ring.shape(), snap.params.size());
    write_params(out, snap.params);
    out << "\n";
  }
  if (!out) throw InvalidInput("failed writing '" + path.string() + "'");
}

SnapshotRing load_snapshots(const std::filesystem::path& path) {
  std::ifstream in = open_in(path);
  if (read_line(in, "magic") != "advalloc-snapshots") {
    throw CorruptFile("not an advalloc snapshot file");
  }
  const int version = read_value<int>(in, "format_version");
  if (version != kModelFormatVersion) {
    throw VersionMismatch("snapshot format version " + std::to_string(version) +
                          " is not supported by this build (expected version " +
                          std::to_string(kModelFormatVersion) + ")");
  }
  const auto capacity = read_value<std::size_t>(in, "capacity");
  const auto count = read_value<std::size_t>(in, "count");
  if (count == 0) throw CorruptFile("snapshot file holds no snapshots");
  std::vector<TrainSnapshot> entries;
  PolicyShape shape;
  for (std::size_t i = 0; i < count; ++i) {
    TrainSnapshot snap;
    snap.episode = read_value<long>(in, "episode");
    std::size_t n = 0;
    PolicyShape s = read_shape(in, n);
    if (i == 0) {
      shape = s;
    } else if (!(s == shape)) {
      throw CorruptFile("snapshot " + std::to_string(i) + " has a different layout");
    }
    snap.params.resize(n);
    read_params(in, snap.params);
    read_line(in, "snapshot separator");
    entries.push_back(std::move(snap));
  }
  SnapshotRing ring(shape, std::max(capacity, count));
  for (const TrainSnapshot& snap : entries) ring.push(snap.episode, snap.params);
  return ring;
}

}  // namespace advalloc

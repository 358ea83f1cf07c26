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

#include "advalloc/config.hpp"

#include <charconv>
#include <fstream>
#include <map>
#include <sstream>

#include "advalloc/error.hpp"

namespace advalloc {
namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

template <class T>
T parse_number(std::string_view text, std::string_view key) {
  const std::string_view t = trim(text);
  T value{};
  const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), value);
  if (ec != std::errc() || ptr != t.data() + t.size() || t.empty()) {
    throw InvalidInput("malformed value '" + std::string(t) + "' for " + std::string(key));
  }
  return value;
}

std::vector<std::string_view> split(std::string_view text, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  for (;;) {
    const std::size_t pos = text.find(sep, start);
    out.push_back(text.substr(start, pos == std::string_view::npos ? pos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

std::string join_list(std::span<const Money> v) { return format_sequence(v); }

std::string join_ints(const std::vector<int>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(v[i]);
  }
  return out;
}

std::vector<int> to_ints(const std::vector<Money>& v, std::string_view key) {
  std::vector<int> out;
  for (Money x : v) {
    if (x < 1 || x > 100000) throw InvalidInput("invalid layer width in " + std::string(key));
    out.push_back(static_cast<int>(x));
  }
  return out;
}

std::string double_text(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

}  // namespace

std::vector<Money> parse_list(std::string_view text) {
  std::string cleaned(trim(text));
  for (char& c : cleaned) {
    if (c == '[' || c == ']' || c == '\t') c = ' ';
  }
  std::vector<Money> out;
  std::vector<std::string> tokens;
  for (std::string_view part : split(cleaned, ',')) {
    std::istringstream ws{std::string(part)};
    std::string tok;
    while (ws >> tok) tokens.push_back(tok);
  }
  for (const std::string& tok : tokens) {
    const std::string_view t(tok);
    if (const auto dots = t.find(".."); dots != std::string_view::npos) {
      const Money a = parse_number<Money>(t.substr(0, dots), "range");
      const Money b = parse_number<Money>(t.substr(dots + 2), "range");
      if (b < a || b - a > 10'000'000) throw InvalidInput("bad range '" + tok + "'");
      for (Money v = a; v <= b; ++v) out.push_back(v);
    } else if (const auto star = t.find('*'); star != std::string_view::npos) {
      const Money v = parse_number<Money>(t.substr(0, star), "repeat");
      const Money k = parse_number<Money>(t.substr(star + 1), "repeat");
      if (k < 0 || k > 10'000'000) throw InvalidInput("bad repeat count in '" + tok + "'");
      for (Money i = 0; i < k; ++i) out.push_back(v);
    } else {
      out.push_back(parse_number<Money>(t, "list"));
    }
  }
  return out;
}

RunConfig parse_run_config(std::string_view text) {
  std::map<std::string, std::string, std::less<>> kv;
  int line_no = 0;
  for (std::string_view raw : split(text, '\n')) {
    ++line_no;
    std::string_view line = raw;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw InvalidInput("config line " + std::to_string(line_no) + ": expected key = value");
    }
    const std::string key(trim(line.substr(0, eq)));
    const std::string value(trim(line.substr(eq + 1)));
    if (key.empty()) throw InvalidInput("config line " + std::to_string(line_no) + ": empty key");
    if (!kv.emplace(key, value).second) {
      throw InvalidInput("config line " + std::to_string(line_no) + ": duplicate key " + key);
    }
  }
  auto take = [&](std::string_view key) -> std::optional<std::string> {
    const auto it = kv.find(key);
    if (it == kv.end()) return std::nullopt;
    std::string v = it->second;
    kv.erase(it);
    return v;
  };
  auto require = [&](std::string_view key) {
    auto v = take(key);
    if (!v) throw InvalidInput("config is missing required key " + std::string(key));
    return *v;
  };

  RunConfig rc;
  const int n_users = parse_number<int>(require("n_users"), "n_users");
  const int n_resources = parse_number<int>(require("n_resources"), "n_resources");
  rc.game = GameConfig::make(n_users, n_resources, parse_list(require("price_set")),
                             parse_list(require("budget_set")));
  if (auto v = take("sequence")) {
    rc.sequence = BudgetSequence(parse_list(*v));
    validate_budgets(rc.game, *rc.sequence);
  }
  if (auto v = take("adversary_strategies")) {
    if (trim(*v) == "prefixes") {
      if (!rc.sequence) throw InvalidInput("adversary_strategies = prefixes needs a sequence");
      rc.adversary_strategies = prefix_strategies(*rc.sequence);
    } else {
      for (std::string_view item : split(*v, ';')) {
        BudgetSequence s(parse_list(item));
        if (s.empty()) throw InvalidInput("empty adversary strategy");
        validate_budgets(rc.game, s);
        rc.adversary_strategies.push_back(std::move(s));
      }
    }
  }
  if (auto v = take("algorithm_strategies")) {
    for (std::string_view item : split(*v, ';')) {
      PriceSequence s(parse_list(item));
      validate_prices(rc.game, s);
      if (s.size() != static_cast<std::size_t>(n_users)) {
        throw InvalidInput("algorithm strategies must have exactly n_users prices");
      }
      rc.algorithm_strategies.push_back(std::move(s));
    }
  }
  TrainConfig& t = rc.train;
  if (auto v = take("episodes")) t.episodes = parse_number<long>(*v, "episodes");
  if (auto v = take("batch")) t.batch = parse_number<int>(*v, "batch");
  if (auto v = take("xi")) t.xi = parse_number<int>(*v, "xi");
  if (auto v = take("lr_alg")) t.lr_alg = parse_number<double>(*v, "lr_alg");
  if (auto v = take("lr_adv")) t.lr_adv = parse_number<double>(*v, "lr_adv");
  if (auto v = take("mw_eta")) t.mw_eta = parse_number<double>(*v, "mw_eta");
  if (auto v = take("mw_rollouts")) t.mw_rollouts = parse_number<int>(*v, "mw_rollouts");
  if (auto v = take("grad_clip")) t.grad_clip = parse_number<double>(*v, "grad_clip");
  if (auto v = take("snapshot_window")) {
    t.snapshot_window = parse_number<std::size_t>(*v, "snapshot_window");
  }
  if (auto v = take("trailing_window")) {
    t.trailing_window = parse_number<int>(*v, "trailing_window");
  }
  if (auto v = take("seed")) t.seed = parse_number<std::uint64_t>(*v, "seed");
  if (auto v = take("alg_hidden")) t.net.alg_hidden = to_ints(parse_list(*v), "alg_hidden");
  if (auto v = take("adv_hidden")) t.net.adv_hidden = to_ints(parse_list(*v), "adv_hidden");
  if (auto v = take("latent_dim")) t.net.latent_dim = parse_number<int>(*v, "latent_dim");
  if (auto v = take("encoder_dim")) t.net.encoder_dim = parse_number<int>(*v, "encoder_dim");
  if (!kv.empty()) throw InvalidInput("unknown config key " + kv.begin()->first);
  t.validate();
  return rc;
}

RunConfig load_run_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidInput("cannot open config file " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_run_config(ss.str());
}

std::string RunConfig::canonical() const {
  std::ostringstream os;
  os << "n_users = " << game.n_users << '\n';
  os << "n_resources = " << game.n_resources << '\n';
  os << "price_set = " << join_list(game.price_set) << '\n';
  os << "budget_set = " << join_list(game.budget_set) << '\n';
  if (sequence) os << "sequence = " << join_list(sequence->view()) << '\n';
  if (!adversary_strategies.empty()) {
    os << "adversary_strategies = ";
    for (std::size_t i = 0; i < adversary_strategies.size(); ++i) {
      os << (i ? " ; " : "") << join_list(adversary_strategies[i].view());
    }
    os << '\n';
  }
  if (!algorithm_strategies.empty()) {
    os << "algorithm_strategies = ";
    for (std::size_t i = 0; i < algorithm_strategies.size(); ++i) {
      os << (i ? " ; " : "") << join_list(algorithm_strategies[i].view());
    }
    os << '\n';
  }
  os << "episodes = " << train.episodes << '\n';
  os << "batch = " << train.batch << '\n';
  os << "xi = " << train.xi << '\n';
  os << "lr_alg = " << double_text(train.lr_alg) << '\n';
  os << "lr_adv = " << double_text(train.lr_adv) << '\n';
  os << "mw_eta = " << double_text(train.mw_eta) << '\n';
  os << "mw_rollouts = " << train.mw_rollouts << '\n';
  os << "grad_clip = " << double_text(train.grad_clip) << '\n';
  os << "snapshot_window = " << train.snapshot_window << '\n';
  os << "trailing_window = " << train.trailing_window << '\n';
  os << "seed = " << train.seed << '\n';
  os << "alg_hidden = " << join_ints(train.net.alg_hidden) << '\n';
  os << "adv_hidden = " << join_ints(train.net.adv_hidden) << '\n';
  os << "latent_dim = " << train.net.latent_dim << '\n';
  os << "encoder_dim = " << train.net.encoder_dim << '\n';
  return os.str();
}

std::vector<std::vector<Money>> load_sequence_file(const std::string& path, std::string* kind) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidInput("cannot open strategy file " + path);
  std::vector<std::vector<Money>> out;
  std::string line;
  while (std::getline(in, line)) {
    std::string_view l = line;
    if (const auto hash = l.find('#'); hash != std::string_view::npos) l = l.substr(0, hash);
    l = trim(l);
    if (l.empty()) continue;
    if (l.starts_with("kind")) {
      const auto eq = l.find('=');
      if (eq == std::string_view::npos) throw InvalidInput(path + ": expected kind = budgets|prices");
      if (kind) *kind = std::string(trim(l.substr(eq + 1)));
      continue;
    }
    out.push_back(parse_list(l));
  }
  return out;
}

}  // namespace advalloc

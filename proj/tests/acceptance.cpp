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

// Acceptance suite: one PASS/FAIL line per criterion.  Run without arguments
// for all criteria, or pass criterion numbers to run a subset.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "advalloc/baselines.hpp"
#include "advalloc/cli.hpp"
#include "advalloc/config.hpp"
#include "advalloc/equilibrium.hpp"
#include "advalloc/train.hpp"
#include "gradcheck.hpp"

namespace advalloc {
namespace {

namespace fs = std::filesystem;
using Clock = std::chrono::steady_clock;

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string config_path(const std::string& name) { return std::string(ADVALLOC_CONFIG_DIR) + "/" + name; }

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string fmt(const char* f, double a) {
  char buf[128];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

std::string fmt(const char* f, double a, double b) {
  char buf[128];
  std::snprintf(buf, sizeof buf, f, a, b);
  return buf;
}

bool within(double v, double target, double tol) { return std::abs(v - target) <= tol; }

int run(std::vector<std::string> args, std::string* out_text = nullptr) {
  args.insert(args.begin(), "advalloc");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  if (out_text != nullptr) *out_text = out.str();
  return code;
}

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / "advalloc_acceptance" / name;
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

// 1. Acceptance LP on the five-level staircase.
Outcome criterion1() {
  const RunConfig rc = load_run_config(config_path("staircase5.cfg"));
  const auto t0 = Clock::now();
  const AcceptanceLpResult r = solve_acceptance_lp(*rc.sequence, rc.game.n_resources);
  const double secs = seconds_since(t0);
  return {within(r.value, 7.834, 0.001) && secs < 1.0, fmt("z=%.6f (target 7.834 +- 0.001), %.3fs (limit 1s)", r.value, secs)};
}

// 2. Restricted game: every budget sequence against three price schedules.
Outcome criterion2() {
  const RunConfig rc = load_run_config(config_path("restricted.cfg"));
  const GapGame game(rc.game, all_budget_sequences(rc.game), rc.algorithm_strategies);
  const MixedStrategy s = solve_zero_sum_lp(game);
  return {within(s.value, 13.0 / 3.0, 0.001) && std::abs(s.v_p - s.v_b) <= 1e-6,
          fmt("value=%.6f (target 4.333 +- 0.001), |v_p-v_b|=%.2g", s.value, std::abs(s.v_p - s.v_b))};
}

// 3. Full game on B={2,4,6}, A={1,3,5,7}, N=7, R=3.
Outcome criterion3() {
  const RunConfig rc = load_run_config(config_path("full_game.cfg"));
  const auto t0 = Clock::now();
  const GapGame game(rc.game, all_budget_sequences(rc.game), all_price_sequences(rc.game));
  const MixedStrategy lp = solve_zero_sum_lp(game);
  const double lp_secs = seconds_since(t0);
  const auto t1 = Clock::now();
  const FictitiousPlayResult fp = fictitious_play(game, 100000);
  const double fp_secs = seconds_since(t1);
  const bool lp_ok = within(lp.value, 3.279, 0.001) && lp_secs < 600.0;
  const bool fp_ok = within(fp.estimate(), 3.279, 0.05) && fp.width() <= 0.1 && fp_secs < 600.0;
  std::ostringstream d;
  d << fmt("exact LP value=%.6f in %.1fs (target 3.279 +- 0.001); ", lp.value, lp_secs)
    << fmt("fictitious play [%.4f, ", fp.lower) << fmt("%.4f] ", fp.upper)
    << fmt("estimate=%.4f in %.1fs (target +- 0.05, width <= 0.1)", fp.estimate(), fp_secs);
  return {lp_ok && fp_ok, d.str()};
}

// 4. Acceptance LP on the 20-level sequences of lengths 40 and 60.
Outcome criterion4() {
  const RunConfig a = load_run_config(config_path("staircase20x2.cfg"));
  const RunConfig b = load_run_config(config_path("staircase20x3.cfg"));
  const double za = solve_acceptance_lp(*a.sequence, a.game.n_resources).value;
  const double zb = solve_acceptance_lp(*b.sequence, b.game.n_resources).value;
  return {within(za, 50.39, 0.01) && within(zb, 58.39, 0.01),
          fmt("length 40: z=%.4f (target 50.39 +- 0.01); ", za) + fmt("length 60: z=%.4f (target 58.39 +- 0.01)", zb)};
}

// 5. Completion oracle against exhaustive search; mismatches land in
// counterexamples.csv under the output directory.
Outcome criterion5() {
  const fs::path dir = scratch("oracle");
  std::string out;
  const int code = run({"oracle-check", "--cases", "1000", "--seed", "7", "--out-dir", dir.string()}, &out);
  while (!out.empty() && out.back() == '\n') out.pop_back();
  const bool ok = code == 0 && out.find("1000/1000 matched") != std::string::npos;
  return {ok, "oracle-check --cases 1000 --seed 7: \"" + out + "\" (required 1000/1000)"};
}

// 6. Backprop against central differences.
Outcome criterion6() {
  const testing::GradCheckSummary s = testing::grad_check_suite(100);
  std::ostringstream d;
  d << s.checked << " triples (" << s.params << " parameters, " << s.skipped << " kink-crossing draws skipped)"
    << fmt(", max relative error %.3g (limit 1e-4)", s.max_rel_error);
  return {s.checked == 100 && s.max_rel_error <= 1e-4, d.str()};
}

// 7. Training against MW.  Seeds and step sizes are fixed here.  A run
// reaches the target when a trailing-500 average (taken once at least 500
// episodes exist) falls inside the +-10% band before 100k episodes.  The final
// value and the share of the second half spent in the band are reported too.
constexpr std::uint64_t kAlgSeed = 1;
constexpr std::uint64_t kAdvSeed = 1;
constexpr int kBatch = 10;
constexpr double kLearningRate = 1e-3;
constexpr long kEpisodes = 100000;

struct Convergence {
  long first_reach = -1;  // episodes, -1 when never inside the band
  double final_value = 0.0;
  double late_share = 0.0;
};

Convergence convergence(const std::vector<MetricsRow>& rows, double target, int window) {
  Convergence c;
  const double lo = 0.9 * target, hi = 1.1 * target;
  long late = 0, late_in = 0;
  for (const MetricsRow& m : rows) {
    const bool in = m.trailing_avg_gap >= lo && m.trailing_avg_gap <= hi;
    if (m.episodes >= window && in && c.first_reach < 0) c.first_reach = m.episodes;
    if (2 * m.episodes > rows.back().episodes) {
      ++late;
      late_in += in;
    }
  }
  c.final_value = rows.back().trailing_avg_gap;
  c.late_share = late == 0 ? 0.0 : static_cast<double>(late_in) / static_cast<double>(late);
  return c;
}

std::string describe(const char* name, std::uint64_t seed, double target, const Convergence& c) {
  std::ostringstream d;
  d << name << " (seed " << seed << ", band " << fmt("[%.3f, %.3f]", 0.9 * target, 1.1 * target) << "): ";
  if (c.first_reach >= 0) {
    d << "reached at " << c.first_reach << " episodes";
  } else {
    d << "never reached";
  }
  d << fmt(", final %.3f", c.final_value) << fmt(", %.0f%% of the second half in band", 100.0 * c.late_share);
  return d.str();
}

TrainConfig mw_train_config(const RunConfig& rc, std::uint64_t seed) {
  TrainConfig t = rc.train;
  t.episodes = kEpisodes;
  t.batch = kBatch;
  t.lr_alg = kLearningRate;
  t.lr_adv = kLearningRate;
  t.seed = seed;
  return t;
}

Outcome criterion7() {
  const RunConfig a = load_run_config(config_path("staircase5.cfg"));
  const TrainConfig ta = mw_train_config(a, kAlgSeed);
  const Convergence ca =
      convergence(train_alg_vs_mw(a.game, ta, a.adversary_strategies).metrics, 7.834, ta.trailing_window);

  const RunConfig b = load_run_config(config_path("restricted.cfg"));
  const TrainConfig tb = mw_train_config(b, kAdvSeed);
  const Convergence cb =
      convergence(train_adv_vs_mw(b.game, tb, b.algorithm_strategies).metrics, 13.0 / 3.0, tb.trailing_window);

  return {ca.first_reach >= 0 && cb.first_reach >= 0,
          describe("algorithm vs MW", kAlgSeed, 7.834, ca) + "; " +
              describe("adversary vs MW", kAdvSeed, 13.0 / 3.0, cb)};
}

// 8. Greedy's constructed worst case with N >= 2R.
Outcome criterion8() {
  std::vector<GameConfig> cfgs{load_run_config(config_path("bench.cfg")).game,
                               GameConfig::make(6, 3, {1, 2, 3}, {2, 3, 7}),
                               GameConfig::make(9, 2, {1, 4}, {1, 2, 4, 8, 16})};
  bool ok = true;
  std::ostringstream d;
  for (const GameConfig& cfg : cfgs) {
    GreedyPolicy greedy(BaselineParams::from(cfg));
    const BudgetSequence w = worst_case_for_threshold(cfg, greedy);
    Rng rng = derive_rng(0, "acceptance-greedy");
    const PolicyRun r = run_policy(cfg, greedy, w, rng);
    const double cr = competitive_ratio(static_cast<double>(r.benchmark), static_cast<double>(r.welfare));
    const double target = static_cast<double>(cfg.upper_bound()) / static_cast<double>(cfg.lower_bound());
    ok = ok && cr == target;
    d << "N=" << cfg.n_users << " R=" << cfg.n_resources << fmt(" CR=%g (U/L=%g); ", cr, target);
  }
  return {ok, d.str()};
}

// 9. Single-user game: value zero, lowest price optimal.
Outcome criterion9() {
  const std::vector<std::pair<std::vector<Money>, std::vector<Money>>> sets{
      {{1, 2}, {1, 2}}, {{1, 3, 5, 7}, {2, 4, 6}}, {{2, 5}, {2, 3, 9}}, {{1, 2, 3}, {4, 8}}};
  bool ok = true;
  std::ostringstream d;
  for (const auto& [a, b] : sets) {
    const GameConfig cfg = GameConfig::make(1, 1, a, b);
    const GapGame game(cfg, all_budget_sequences(cfg), all_price_sequences(cfg));
    const MixedStrategy s = solve_zero_sum_lp(game);
    double lowest_worst = 0.0;
    for (std::size_t i = 0; i < game.rows(); ++i) lowest_worst = std::max(lowest_worst, game.entry(i, 0));
    ok = ok && std::abs(s.value) <= 1e-9 && lowest_worst == 0.0;
    d << fmt("value=%.3g, worst gap of min(A)=%g; ", s.value, lowest_worst);
  }
  return {ok, d.str()};
}

// 10. Abundant resources: greedy and a trained network (argmax decoding) have
// zero gap on every budget sequence.
Outcome criterion10() {
  const GameConfig cfg = GameConfig::make(4, 4, {1, 2, 3}, {1, 2, 3});
  TrainConfig t;
  t.episodes = 4000;
  t.batch = 10;
  t.seed = 5;
  const TrainResult trained = train_joint(cfg, t);
  LearnedPolicy learned(cfg, trained.alg, Decode::kArgmax);
  GreedyPolicy greedy(BaselineParams::from(cfg));
  const auto all = all_budget_sequences(cfg);
  Money learned_max = 0, greedy_max = 0;
  Rng rng = derive_rng(0, "acceptance-abundance");
  for (const BudgetSequence& b : all) {
    learned_max = std::max(learned_max, run_policy(cfg, learned, b, rng).gap());
    greedy_max = std::max(greedy_max, run_policy(cfg, greedy, b, rng).gap());
  }
  return {learned_max == 0 && greedy_max == 0,
          std::to_string(all.size()) + " sequences, max gap learned=" + std::to_string(learned_max) +
              " greedy=" + std::to_string(greedy_max)};
}

std::vector<std::pair<std::string, std::string>> csv_files(const fs::path& dir) {
  std::vector<std::pair<std::string, std::string>> out;
  for (const auto& e : fs::recursive_directory_iterator(dir)) {
    if (e.path().extension() != ".csv") continue;
    std::ifstream in(e.path(), std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    out.emplace_back(fs::relative(e.path(), dir).string(), ss.str());
  }
  std::sort(out.begin(), out.end());
  return out;
}

// 11. Every subcommand twice with the same seed; CSV outputs byte-identical.
Outcome criterion11() {
  const std::string restricted = config_path("restricted.cfg");
  const std::string staircase = config_path("staircase5.cfg");
  bool ok = true;
  std::ostringstream d;
  std::vector<fs::path> roots;
  for (int rep = 0; rep < 2; ++rep) {
    roots.push_back(scratch("determinism" + std::to_string(rep)));
    const std::string r = roots.back().string();
    const std::vector<std::vector<std::string>> cmds{
        {"train", "--config", restricted, "--mode", "joint", "--episodes", "200", "--batch", "10", "--seed", "3", "--out-dir", r + "/joint"},
        {"train", "--config", staircase, "--mode", "alg-vs-mw", "--episodes", "200", "--batch", "10", "--seed", "3", "--out-dir", r + "/algmw"},
        {"train", "--config", restricted, "--mode", "adv-vs-mw", "--episodes", "200", "--batch", "10", "--seed", "3", "--out-dir", r + "/advmw"},
        {"eval", "--config", staircase, "--alg-model", r + "/algmw/alg.model", "--seed", "3", "--out-dir", r + "/eval"},
        {"ne", "--config", restricted, "--mode", "lp", "--out-dir", r + "/ne"},
        {"ne", "--config", staircase, "--mode", "acceptance-lp", "--out-dir", r + "/acc"},
        {"ne", "--config", restricted, "--mode", "fp", "--iterations", "500", "--out-dir", r + "/fp"},
        {"bench", "--config", config_path("bench.cfg"), "--mode", "random", "--n-sequences", "100", "--seed", "3",
         "--out-dir", r + "/bench"},
        {"bench", "--config", restricted, "--mode", "worst", "--n-sequences", "50", "--seed", "3", "--policies",
         "kp-threshold,randomized,greedy,learned", "--alg-model", r + "/joint/alg.model", "--adv-snapshots",
         r + "/joint/adv.snapshots", "--out-dir", r + "/bench_worst"},
        {"oracle-check", "--cases", "100", "--seed", "3", "--out-dir", r + "/oracle"}};
    for (const auto& c : cmds) {
      if (run(c) != 0) {
        ok = false;
        d << "command failed: " << c[0] << ' ' << c.back() << "; ";
      }
    }
  }
  const auto a = csv_files(roots[0]);
  const auto b = csv_files(roots[1]);
  if (a.size() != b.size()) {
    ok = false;
    d << "different CSV file sets; ";
  }
  std::size_t identical = 0;
  for (std::size_t i = 0; i < std::min(a.size(), b.size()); ++i) {
    if (a[i] == b[i]) {
      ++identical;
    } else {
      ok = false;
      d << "differs: " << a[i].first << "; ";
    }
  }
  d << identical << "/" << a.size() << " CSV files byte-identical across two runs";
  return {ok && !a.empty(), d.str()};
}

using Criterion = std::function<Outcome()>;

int run_all(const std::set<int>& only) {
  const std::vector<Criterion> criteria{criterion1, criterion2, criterion3, criterion4,  criterion5, criterion6,
                                        criterion7, criterion8, criterion9, criterion10, criterion11};
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const int id = static_cast<int>(i) + 1;
    if (!only.empty() && only.count(id) == 0) continue;
    Outcome o;
    const auto t0 = Clock::now();
    try {
      o = criteria[i]();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    if (!o.pass) ++failed;
    std::cout << "criterion " << id << ": " << (o.pass ? "PASS" : "FAIL") << " - " << o.detail
              << fmt(" [%.1fs]", seconds_since(t0)) << std::endl;
  }
  return failed == 0 ? 0 : 1;
}

}  // namespace
}  // namespace advalloc

int main(int argc, char** argv) {
  std::set<int> only;
  for (int i = 1; i < argc; ++i) only.insert(std::atoi(argv[i]));
  return advalloc::run_all(only);
}

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

#include "advalloc/cli.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>

#include "advalloc/baselines.hpp"
#include "advalloc/config.hpp"
#include "advalloc/csv.hpp"
#include "advalloc/equilibrium.hpp"
#include "advalloc/error.hpp"
#include "advalloc/model_io.hpp"
#include "advalloc/oracle.hpp"
#include "advalloc/train.hpp"

#ifndef ADVALLOC_VERSION
#define ADVALLOC_VERSION "unknown"
#endif

namespace advalloc {
namespace {

namespace fs = std::filesystem;

struct CommonArgs {
  std::string config;
  std::uint64_t seed = 0;
  CLI::Option* seed_opt = nullptr;
  std::string out_dir = ".";
};

void add_common(CLI::App* sub, CommonArgs& args, bool config_required) {
  auto* c = sub->add_option("--config", args.config, "run configuration file");
  if (config_required) c->required();
  args.seed_opt = sub->add_option("--seed", args.seed, "root seed (overrides the config)");
  sub->add_option("--out-dir", args.out_dir, "directory for outputs")->capture_default_str();
}

std::string fixed(double v, int digits = 6) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

class ManifestWriter {
 public:
  ManifestWriter(const CommonArgs& args, std::string subcommand, std::vector<std::string> argv)
      : args_(args), subcommand_(std::move(subcommand)), argv_(std::move(argv)) {}

  void write(std::uint64_t seed, const std::string& config_text,
             const std::vector<std::string>& artifacts) const {
    fs::create_directories(args_.out_dir);
    std::ofstream out(fs::path(args_.out_dir) / "run-manifest.txt", std::ios::binary);
    if (!out) throw InvalidInput("cannot write run manifest in " + args_.out_dir);
    out << "advalloc run manifest\n";
    out << "version " << ADVALLOC_VERSION << '\n';
    out << "subcommand " << subcommand_ << '\n';
    out << "argv";
    for (const std::string& a : argv_) out << ' ' << a;
    out << '\n';
    out << "seed " << seed << '\n';
    out << "config_path " << (args_.config.empty() ? "-" : args_.config) << '\n';
    out << "[config]\n" << config_text;
    out << "[artifacts]\n";
    for (const std::string& a : artifacts) out << a << '\n';
  }

 private:
  const CommonArgs& args_;
  std::string subcommand_;
  std::vector<std::string> argv_;
};

RunConfig load_config(const CommonArgs& args) {
  RunConfig rc = load_run_config(args.config);
  if (args.seed_opt != nullptr && args.seed_opt->count() > 0) rc.train.seed = args.seed;
  return rc;
}

std::string out_path(const CommonArgs& args, const std::string& name) {
  return (fs::path(args.out_dir) / name).string();
}

SnapshotRing latest_snapshots(const SnapshotRing& ring, std::size_t count) {
  SnapshotRing out(ring.shape(), std::max<std::size_t>(1, std::min(count, ring.capacity())));
  const std::size_t start = ring.size() > count ? ring.size() - count : 0;
  for (std::size_t i = start; i < ring.size(); ++i) out.push(ring.at(i).episode, ring.at(i).params);
  return out;
}

void write_mw(const std::string& path, const std::vector<std::string>& sequences,
              const std::vector<double>& dist) {
  CsvWriter csv(path, {"index", "sequence", "probability"});
  for (std::size_t i = 0; i < dist.size(); ++i) {
    csv.row({std::to_string(i), sequences[i], format_double(dist[i])});
  }
}

// ---------------------------------------------------------------- train

struct TrainArgs {
  CommonArgs common;
  std::string mode;
  std::optional<long> episodes;
  std::optional<int> batch;
  std::optional<int> xi;
  std::optional<double> lr_alg;
  std::optional<double> lr_adv;
  std::optional<double> mw_eta;
  std::optional<int> mw_rollouts;
  std::size_t keep_snapshots = 50;
};

int cmd_train(const TrainArgs& a, const ManifestWriter& manifest, std::ostream& out) {
  RunConfig rc = load_config(a.common);
  TrainConfig& t = rc.train;
  if (a.episodes) t.episodes = *a.episodes;
  if (a.batch) t.batch = *a.batch;
  if (a.xi) t.xi = *a.xi;
  if (a.lr_alg) t.lr_alg = *a.lr_alg;
  if (a.lr_adv) t.lr_adv = *a.lr_adv;
  if (a.mw_eta) t.mw_eta = *a.mw_eta;
  if (a.mw_rollouts) t.mw_rollouts = *a.mw_rollouts;
  t.validate();

  std::vector<std::string> artifacts{"metrics.csv"};
  const bool with_alg = a.mode != "adv-vs-mw";
  const bool with_adv = a.mode != "alg-vs-mw";
  if (with_alg) artifacts.insert(artifacts.end(), {"alg.model", "alg.snapshots"});
  if (with_adv) artifacts.insert(artifacts.end(), {"adv.model", "adv.snapshots"});
  if (a.mode != "joint") artifacts.push_back("mw.csv");
  if (a.mode == "alg-vs-mw" && rc.adversary_strategies.empty()) {
    throw InvalidInput("alg-vs-mw needs adversary_strategies in the config");
  }
  if (a.mode == "adv-vs-mw" && rc.algorithm_strategies.empty()) {
    throw InvalidInput("adv-vs-mw needs algorithm_strategies in the config");
  }
  manifest.write(t.seed, rc.canonical(), artifacts);

  CsvWriter metrics(out_path(a.common, "metrics.csv"),
                    {"iteration", "mean_gap", "mean_welfare", "trailing_avg_gap", "episodes"});
  const MetricsSink sink = [&metrics](const MetricsRow& r) {
    metrics.row({std::to_string(r.iteration),
                 format_double(r.mean_gap), format_double(r.mean_welfare),
                 format_double(r.trailing_avg_gap), std::to_string(r.episodes)});
  };
  TrainResult result = a.mode == "joint"       ? train_joint(rc.game, t, sink)
                       : a.mode == "alg-vs-mw" ? train_alg_vs_mw(rc.game, t, rc.adversary_strategies, sink)
                                               : train_adv_vs_mw(rc.game, t, rc.algorithm_strategies, sink);
  metrics.flush();
  if (with_alg) {
    save_model(out_path(a.common, "alg.model"), result.alg);
    save_snapshots(out_path(a.common, "alg.snapshots"),
                   latest_snapshots(result.alg_snapshots, a.keep_snapshots));
  }
  if (with_adv) {
    save_model(out_path(a.common, "adv.model"), result.adv);
    save_snapshots(out_path(a.common, "adv.snapshots"),
                   latest_snapshots(result.adv_snapshots, a.keep_snapshots));
  }
  if (a.mode == "alg-vs-mw") {
    std::vector<std::string> names;
    for (const auto& s : rc.adversary_strategies) names.push_back(format_sequence(s.view()));
    write_mw(out_path(a.common, "mw.csv"), names, result.mw_distribution);
  } else if (a.mode == "adv-vs-mw") {
    std::vector<std::string> names;
    for (const auto& s : rc.algorithm_strategies) names.push_back(format_sequence(s.view()));
    write_mw(out_path(a.common, "mw.csv"), names, result.mw_distribution);
  }
  const double trailing = result.metrics.empty() ? 0.0 : result.metrics.back().trailing_avg_gap;
  out << "episodes " << (result.metrics.empty() ? 0 : result.metrics.back().episodes) << '\n';
  out << "trailing_avg_gap " << fixed(trailing) << '\n';
  return 0;
}

// ----------------------------------------------------------------- eval

struct EvalArgs {
  CommonArgs common;
  std::string alg_model;
  std::string alg_snapshots;
  std::string adv_model;
  std::string decode = "sample";
  int rollouts = 100;
};

Decode parse_decode(const std::string& s) { return s == "argmax" ? Decode::kArgmax : Decode::kSample; }

int cmd_eval(const EvalArgs& a, const ManifestWriter& manifest, std::ostream& out) {
  RunConfig rc = load_config(a.common);
  const int sources = !a.alg_model.empty() + !a.alg_snapshots.empty() + !a.adv_model.empty();
  if (sources != 1) {
    throw InvalidInput("eval needs exactly one of --alg-model, --alg-snapshots, --adv-model");
  }
  if (a.rollouts < 1) throw InvalidInput("--rollouts must be positive");
  manifest.write(rc.train.seed, rc.canonical(), {"eval.csv"});
  Rng rng = derive_rng(rc.train.seed, "eval");
  CsvWriter csv(out_path(a.common, "eval.csv"), {"index", "sequence", "expected_gap"});
  std::vector<double> gaps;
  std::vector<std::string> names;
  if (!a.adv_model.empty()) {
    if (rc.algorithm_strategies.empty()) throw InvalidInput("config has no algorithm_strategies");
    const MlpPolicy adv = load_model(a.adv_model);
    if (!(adv.shape() == MlpPolicy::adversary(rc.game, rc.train.net).shape())) {
      throw InvalidInput("adversary model does not match the config");
    }
    gaps = expected_gaps_vs_adversary(rc.game, adv, rc.algorithm_strategies, a.rollouts, rng);
    for (const auto& s : rc.algorithm_strategies) names.push_back(format_sequence(s.view()));
  } else {
    std::vector<BudgetSequence> strategies = rc.adversary_strategies;
    if (strategies.empty() && rc.sequence) strategies = prefix_strategies(*rc.sequence);
    if (strategies.empty()) throw InvalidInput("config has no adversary_strategies or sequence");
    std::optional<SnapshotRing> ring;
    MlpPolicy alg = MlpPolicy::algorithm(rc.game, rc.train.net);
    if (!a.alg_snapshots.empty()) {
      ring.emplace(load_snapshots(a.alg_snapshots));
      if (ring->empty()) throw InvalidInput("snapshot file is empty");
      if (!(ring->shape() == alg.shape())) throw InvalidInput("snapshots do not match the config");
    } else {
      alg = load_model(a.alg_model);
      if (!(alg.shape() == MlpPolicy::algorithm(rc.game, rc.train.net).shape())) {
        throw InvalidInput("algorithm model does not match the config");
      }
    }
    gaps = expected_gaps_vs_algorithm(rc.game, alg, strategies, a.rollouts, rng,
                                      ring ? &*ring : nullptr, parse_decode(a.decode));
    for (const auto& s : strategies) names.push_back(format_sequence(s.view()));
  }
  for (std::size_t i = 0; i < gaps.size(); ++i) {
    csv.row({std::to_string(i), names[i], format_double(gaps[i])});
  }
  const auto worst = std::max_element(gaps.begin(), gaps.end());
  const auto best = std::min_element(gaps.begin(), gaps.end());
  out << "max_expected_gap " << fixed(*worst) << " at strategy " << (worst - gaps.begin()) << '\n';
  out << "min_expected_gap " << fixed(*best) << " at strategy " << (best - gaps.begin()) << '\n';
  return 0;
}

// ------------------------------------------------------------------- ne

struct NeArgs {
  CommonArgs common;
  std::string mode = "lp";
  long iterations = 100000;
  std::vector<std::string> strategy_files;
};

int cmd_ne(const NeArgs& a, const ManifestWriter& manifest, std::ostream& out) {
  RunConfig rc = load_config(a.common);
  if (a.mode == "acceptance-lp") {
    if (!rc.sequence) throw InvalidInput("acceptance-lp needs a sequence in the config");
    manifest.write(rc.train.seed, rc.canonical(), {"acceptance.csv"});
    const AcceptanceLpResult res = solve_acceptance_lp(*rc.sequence, rc.game.n_resources);
    CsvWriter csv(out_path(a.common, "acceptance.csv"), {"slot", "budget", "accept_prob"});
    for (std::size_t i = 0; i < res.accept_prob.size(); ++i) {
      csv.row({std::to_string(i + 1), std::to_string((*rc.sequence)[i]),
               format_double(res.accept_prob[i])});
    }
    out << "value " << fixed(res.value) << '\n';
    return 0;
  }

  std::vector<BudgetSequence> rows = rc.adversary_strategies;
  std::vector<PriceSequence> cols = rc.algorithm_strategies;
  for (const std::string& file : a.strategy_files) {
    std::string kind;
    const auto seqs = load_sequence_file(file, &kind);
    if (kind == "budgets") {
      rows.clear();
      for (const auto& s : seqs) rows.emplace_back(s);
    } else if (kind == "prices") {
      cols.clear();
      for (const auto& s : seqs) cols.emplace_back(s);
    } else {
      throw InvalidInput(file + ": first line must be kind = budgets or kind = prices");
    }
  }
  if (rows.empty()) rows = all_budget_sequences(rc.game);
  if (cols.empty()) cols = all_price_sequences(rc.game);
  manifest.write(rc.train.seed, rc.canonical(), {"strategies.csv"});
  const GapGame game(rc.game, rows, cols);

  std::vector<double> tau_p;
  std::vector<double> tau_b;
  if (a.mode == "lp") {
    const MixedStrategy ms = solve_zero_sum_lp(game);
    out << "value " << fixed(ms.value) << '\n';
    out << "v_p " << fixed(ms.v_p, 9) << " v_b " << fixed(ms.v_b, 9) << '\n';
    tau_p = ms.tau_p;
    tau_b = ms.tau_b;
  } else {
    const FictitiousPlayResult fp = fictitious_play(game, a.iterations);
    out << "value " << fixed(fp.estimate()) << '\n';
    out << "bracket " << fixed(fp.lower) << ' ' << fixed(fp.upper) << " width "
        << fixed(fp.width()) << '\n';
    tau_p = fp.tau_p;
    tau_b = fp.tau_b;
  }
  CsvWriter csv(out_path(a.common, "strategies.csv"), {"side", "index", "sequence", "probability"});
  for (std::size_t i = 0; i < tau_b.size(); ++i) {
    if (tau_b[i] > 1e-12) {
      csv.row({"adversary", std::to_string(i), format_sequence(rows[i].view()),
               format_double(tau_b[i])});
    }
  }
  for (std::size_t j = 0; j < tau_p.size(); ++j) {
    if (tau_p[j] > 1e-12) {
      csv.row({"algorithm", std::to_string(j), format_sequence(cols[j].view()),
               format_double(tau_p[j])});
    }
  }
  return 0;
}

// ---------------------------------------------------------------- bench

struct BenchArgs {
  CommonArgs common;
  std::string policies = "kp-threshold,randomized,greedy";
  std::string mode = "random";
  long n_sequences = 1000;
  std::string alg_model;
  std::string alg_snapshots;
  std::string adv_snapshots;
  std::string decode = "argmax";
};

int cmd_bench(const BenchArgs& a, const ManifestWriter& manifest, std::ostream& out) {
  RunConfig rc = load_config(a.common);
  const BaselineParams params = BaselineParams::from(rc.game);
  std::vector<std::unique_ptr<OnlinePolicy>> owned;
  std::optional<SnapshotRing> alg_ring;
  std::optional<SnapshotRing> adv_ring;
  std::stringstream names(a.policies);
  std::string name;
  while (std::getline(names, name, ',')) {
    if (name == "kp-threshold") {
      owned.push_back(std::make_unique<KpThresholdPolicy>(params));
    } else if (name == "randomized") {
      owned.push_back(std::make_unique<RandomizedPolicy>(params));
    } else if (name == "greedy") {
      owned.push_back(std::make_unique<GreedyPolicy>(params));
    } else if (name == "learned") {
      const Decode decode = parse_decode(a.decode);
      if (!a.alg_snapshots.empty()) {
        alg_ring.emplace(load_snapshots(a.alg_snapshots));
        owned.push_back(std::make_unique<LearnedPolicy>(rc.game, *alg_ring, decode));
      } else if (!a.alg_model.empty()) {
        owned.push_back(std::make_unique<LearnedPolicy>(rc.game, load_model(a.alg_model), decode));
      } else {
        throw InvalidInput("the learned policy needs --alg-model or --alg-snapshots");
      }
    } else {
      throw InvalidInput("unknown policy '" + name + "'");
    }
  }
  if (owned.empty()) throw InvalidInput("no policies selected");
  if (!a.adv_snapshots.empty()) adv_ring.emplace(load_snapshots(a.adv_snapshots));
  manifest.write(rc.train.seed, rc.canonical(), {"results.csv"});
  std::vector<OnlinePolicy*> policies;
  for (auto& p : owned) policies.push_back(p.get());
  BenchOptions opts;
  opts.mode = a.mode == "worst" ? BenchMode::kWorst : BenchMode::kRandom;
  opts.n_sequences = a.n_sequences;
  opts.seed = rc.train.seed;
  opts.adversary = adv_ring ? &*adv_ring : nullptr;
  const std::vector<PolicyMetrics> rows = evaluate_policies(rc.game, policies, opts);
  CsvWriter csv(out_path(a.common, "results.csv"),
                {"policy", "mode", "sequences", "competitive_ratio", "mean_welfare",
                 "mean_benchmark", "mean_gap"});
  for (const PolicyMetrics& m : rows) {
    csv.row({m.policy, to_string(m.mode), std::to_string(m.sequences),
             format_double(m.competitive_ratio), format_double(m.mean_welfare),
             format_double(m.mean_benchmark), format_double(m.mean_gap)});
    out << m.policy << " cr " << format_double(m.competitive_ratio) << " mean_gap "
        << format_double(m.mean_gap) << '\n';
  }
  return 0;
}

// --------------------------------------------------------- oracle-check

struct OracleArgs {
  CommonArgs common;
  long cases = 1000;
  OracleCheckLimits limits;
};

int cmd_oracle(const OracleArgs& a, const ManifestWriter& manifest, std::ostream& out) {
  const std::uint64_t seed = a.common.seed;
  std::ostringstream text;
  text << "cases = " << a.cases << "\nmax_users = " << a.limits.max_users
       << "\nmax_budgets = " << a.limits.max_budgets << "\nmax_prices = " << a.limits.max_prices
       << "\nmax_resources = " << a.limits.max_resources
       << "\nmax_value = " << a.limits.max_value << '\n';
  manifest.write(seed, text.str(), {"counterexamples.csv (only on mismatch)"});
  const OracleCheckReport report = oracle_check(a.cases, seed, a.limits);
  out << report.matched << '/' << report.cases << " matched\n";
  if (report.mismatches.empty()) return 0;
  CsvWriter csv(out_path(a.common, "counterexamples.csv"), {"instance", "oracle_gap", "brute_gap"});
  for (const OracleMismatch& m : report.mismatches) {
    csv.row({m.instance, std::to_string(m.oracle_gap), std::to_string(m.brute_gap)});
  }
  return 1;
}

std::vector<Money> random_set(Rng& rng, int size, int max_value) {
  std::vector<Money> pool;
  for (int v = 1; v <= max_value; ++v) pool.push_back(v);
  std::shuffle(pool.begin(), pool.end(), rng);
  pool.resize(static_cast<std::size_t>(size));
  std::sort(pool.begin(), pool.end());
  return pool;
}

}  // namespace

OracleCheckReport oracle_check(long cases, std::uint64_t seed, const OracleCheckLimits& limits) {
  if (cases < 0) throw InvalidInput("--cases must be non-negative");
  if (limits.max_users < 1 || limits.max_budgets < 1 || limits.max_prices < 1 ||
      limits.max_resources < 1 || limits.max_value < std::max(limits.max_budgets, limits.max_prices)) {
    throw InvalidInput("invalid oracle-check limits");
  }
  OracleCheckReport report;
  for (long c = 0; c < cases; ++c) {
    Rng rng = derive_rng(seed, "oracle-check", static_cast<std::uint64_t>(c));
    auto draw = [&rng](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
    const int n = draw(1, limits.max_users);
    const int r = draw(1, limits.max_resources);
    const GameConfig cfg = GameConfig::make(n, r, random_set(rng, draw(1, limits.max_prices), limits.max_value),
                                            random_set(rng, draw(1, limits.max_budgets), limits.max_value));
    std::vector<Money> prices(static_cast<std::size_t>(n));
    for (Money& p : prices) p = cfg.price_set[static_cast<std::size_t>(draw(0, cfg.num_prices() - 1))];
    std::vector<Money> prefix(static_cast<std::size_t>(draw(0, n)));
    for (Money& b : prefix) b = cfg.budget_set[static_cast<std::size_t>(draw(0, cfg.num_budgets() - 1))];
    const PriceSequence ps(prices);
    const Money fast = opt_budget(cfg, ps, prefix).gap;
    const Money slow = brute_force_completion(cfg, ps, prefix).gap;
    ++report.cases;
    if (fast == slow) {
      ++report.matched;
    } else {
      std::ostringstream os;
      os << "n_users=" << n << " n_resources=" << r << " price_set=" << format_sequence(cfg.price_set)
         << " budget_set=" << format_sequence(cfg.budget_set) << " prices=" << format_sequence(prices)
         << " prefix=" << format_sequence(prefix);
      report.mismatches.push_back({os.str(), static_cast<long>(fast), static_cast<long>(slow)});
    }
  }
  return report;
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Adversarial online resource allocation: training, equilibria and baselines",
               "advalloc"};
  app.set_version_flag("--version", std::string(ADVALLOC_VERSION));
  app.require_subcommand(1);

  TrainArgs train;
  auto* train_cmd = app.add_subcommand("train", "train networks by self-play or against MW");
  add_common(train_cmd, train.common, true);
  train_cmd->add_option("--mode", train.mode, "joint | alg-vs-mw | adv-vs-mw")
      ->required()
      ->check(CLI::IsMember({"joint", "alg-vs-mw", "adv-vs-mw"}));
  train_cmd->add_option("--episodes", train.episodes, "total training sequences");
  train_cmd->add_option("--batch", train.batch, "sequences per update");
  train_cmd->add_option("--xi", train.xi, "adversary steps per iteration");
  train_cmd->add_option("--lr-alg", train.lr_alg, "algorithm learning rate");
  train_cmd->add_option("--lr-adv", train.lr_adv, "adversary learning rate");
  train_cmd->add_option("--mw-eta", train.mw_eta, "MW step size");
  train_cmd->add_option("--mw-rollouts", train.mw_rollouts, "plays per strategy per MW update");
  train_cmd->add_option("--keep-snapshots", train.keep_snapshots,
                        "number of latest snapshots written")->capture_default_str();

  EvalArgs eval;
  auto* eval_cmd = app.add_subcommand("eval", "expected gaps of a trained network");
  add_common(eval_cmd, eval.common, true);
  eval_cmd->add_option("--alg-model", eval.alg_model, "algorithm model file");
  eval_cmd->add_option("--alg-snapshots", eval.alg_snapshots, "algorithm snapshot file");
  eval_cmd->add_option("--adv-model", eval.adv_model, "adversary model file");
  eval_cmd->add_option("--decode", eval.decode, "sample | argmax")
      ->check(CLI::IsMember({"sample", "argmax"}))
      ->capture_default_str();
  eval_cmd->add_option("--rollouts", eval.rollouts, "plays per strategy")->capture_default_str();

  NeArgs ne;
  auto* ne_cmd = app.add_subcommand("ne", "Nash equilibrium of the allocation game");
  add_common(ne_cmd, ne.common, true);
  ne_cmd->add_option("--mode", ne.mode, "lp | acceptance-lp | fp")
      ->check(CLI::IsMember({"lp", "acceptance-lp", "fp"}))
      ->capture_default_str();
  ne_cmd->add_option("--iterations", ne.iterations, "fictitious play iterations")
      ->capture_default_str();
  ne_cmd->add_option("--strategy-files", ne.strategy_files,
                     "pure strategy subsets; first line kind = budgets|prices");

  BenchArgs bench;
  auto* bench_cmd = app.add_subcommand("bench", "competitive ratio of online policies");
  add_common(bench_cmd, bench.common, true);
  bench_cmd->add_option("--policies", bench.policies,
                        "comma list of kp-threshold, randomized, greedy, learned")
      ->capture_default_str();
  bench_cmd->add_option("--mode", bench.mode, "worst | random")
      ->check(CLI::IsMember({"worst", "random"}))
      ->capture_default_str();
  bench_cmd->add_option("--n-sequences", bench.n_sequences, "sequences per policy")
      ->capture_default_str();
  bench_cmd->add_option("--alg-model", bench.alg_model, "algorithm model for the learned policy");
  bench_cmd->add_option("--alg-snapshots", bench.alg_snapshots, "algorithm snapshots for the learned policy");
  bench_cmd->add_option("--adv-snapshots", bench.adv_snapshots, "adversary snapshots proposing worst cases");
  bench_cmd->add_option("--decode", bench.decode, "sample | argmax")
      ->check(CLI::IsMember({"sample", "argmax"}))
      ->capture_default_str();

  OracleArgs oracle;
  auto* oracle_cmd = app.add_subcommand("oracle-check", "compare the completion oracle with brute force");
  add_common(oracle_cmd, oracle.common, false);
  oracle_cmd->add_option("--cases", oracle.cases, "random instances")->capture_default_str();
  oracle_cmd->add_option("--max-users", oracle.limits.max_users)->capture_default_str();
  oracle_cmd->add_option("--max-budgets", oracle.limits.max_budgets)->capture_default_str();
  oracle_cmd->add_option("--max-prices", oracle.limits.max_prices)->capture_default_str();
  oracle_cmd->add_option("--max-resources", oracle.limits.max_resources)->capture_default_str();
  oracle_cmd->add_option("--max-value", oracle.limits.max_value)->capture_default_str();

  if (argc <= 1) {
    err << app.help();
    return 2;
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForVersion&) {
    out << ADVALLOC_VERSION << '\n';
    return 0;
  } catch (const CLI::ParseError& e) {
    // Help requested on a subcommand is reported through app.exit.
    if (e.get_exit_code() == 0) return app.exit(e, out, err);
    err << "advalloc: error: " << e.what() << '\n';
    return 2;
  }

  std::vector<std::string> args(argv + 1, argv + argc);
  try {
    if (train_cmd->parsed()) return cmd_train(train, ManifestWriter(train.common, "train", args), out);
    if (eval_cmd->parsed()) return cmd_eval(eval, ManifestWriter(eval.common, "eval", args), out);
    if (ne_cmd->parsed()) return cmd_ne(ne, ManifestWriter(ne.common, "ne", args), out);
    if (bench_cmd->parsed()) return cmd_bench(bench, ManifestWriter(bench.common, "bench", args), out);
    if (oracle_cmd->parsed()) {
      return cmd_oracle(oracle, ManifestWriter(oracle.common, "oracle-check", args), out);
    }
  } catch (const std::exception& e) {
    err << "advalloc: error: " << e.what() << '\n';
    return 1;
  }
  err << app.help();
  return 2;
}

}  // namespace advalloc

// Command-line front end: scenario inspection, experiment execution, LIL
// verification, and machine-readable output. Progress goes to stderr; stdout
// carries data when no output path is given.

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "bestarm/elimination.hpp"
#include "bestarm/harness.hpp"
#include "bestarm/io.hpp"

namespace {

using namespace bestarm;

int default_workers() {
  if (const char* env = std::getenv("BESTARM_WORKERS")) {
    const int w = std::atoi(env);
    if (w > 0) return w;
  }
  return 1;
}

ScenarioKind parse_kind_flag(std::string kind) {
  for (auto& ch : kind)
    if (ch == '-') ch = '_';
  if (kind == "one_sparse") return ScenarioKind::OneSparse;
  if (kind == "alpha") return ScenarioKind::Alpha;
  if (kind == "explicit") return ScenarioKind::Explicit;
  throw CLI::ValidationError("--kind", "expected one-sparse, alpha, or explicit");
}

AlgorithmSpec parse_algorithm_flag(const std::string& label, double nu) {
  AlgorithmSpec spec;
  spec.nu = nu;
  std::string name = label;
  if (name.size() > 3 && name.substr(name.size() - 3) == "+ls") {
    spec.ls_enabled = true;
    name = name.substr(0, name.size() - 3);
  }
  const auto kind = parse_algorithm_kind(name);
  if (!kind)
    throw CLI::ValidationError("--algorithms", "unknown algorithm: " + label);
  spec.kind = *kind;
  return spec;
}

struct RunFlags {
  std::string config_path;
  std::string kind;
  int n = 0;
  double alpha = 0.0;
  double scale = 0.0;
  std::vector<double> means;
  std::vector<std::string> algorithms;
  int trials = 0;
  double nu = 0.0;
  std::uint64_t master_seed = 0;
  bool seed_set = false;
  std::int64_t max_pulls = 0;
  std::vector<std::int64_t> checkpoints;
  int workers = 0;
  bool workers_set = false;
  std::string output;
  std::string format = "csv";
  bool timing = false;
};

void add_run_flags(CLI::App* cmd, RunFlags& f) {
  cmd->add_option("--config", f.config_path, "JSON config file; flags override its values");
  cmd->add_option("--kind", f.kind, "scenario kind: one-sparse, alpha, explicit");
  cmd->add_option("--n", f.n, "scenario size parameter");
  cmd->add_option("--alpha", f.alpha, "alpha scenario exponent, in (0,1)");
  cmd->add_option("--scale", f.scale, "reward scale sigma (default 0.5)");
  cmd->add_option("--means", f.means, "explicit scenario means")->delimiter(',');
  cmd->add_option("--algorithms", f.algorithms,
                  "algorithm labels, e.g. lil_ucb_heuristic,successive_elim,nonadaptive+ls")
      ->delimiter(',');
  cmd->add_option("--trials", f.trials, "trials per (scenario, algorithm) cell");
  cmd->add_option("--nu", f.nu, "input confidence");
  cmd->add_option("--master-seed", f.master_seed, "master seed")->each([&](const std::string&) {
    f.seed_set = true;
  });
  cmd->add_option("--max-pulls", f.max_pulls, "per-trial pull cap");
  cmd->add_option("--checkpoints", f.checkpoints, "anytime checkpoints (pull counts)")
      ->delimiter(',');
  cmd->add_option("--workers", f.workers, "worker threads (default $BESTARM_WORKERS or 1)")
      ->each([&](const std::string&) { f.workers_set = true; });
  cmd->add_option("--output,-o", f.output, "output file path (stdout when omitted)");
  cmd->add_option("--format", f.format, "csv or json")
      ->check(CLI::IsMember({"csv", "json"}));
  cmd->add_flag("--timing", f.timing,
                "record real per-trial wall time (breaks byte-identical reruns)");
}

ExperimentConfig build_config(const RunFlags& f, bool anytime) {
  ExperimentConfig cfg;
  if (!f.config_path.empty()) cfg = load_config_file(f.config_path);
  if (f.nu > 0.0) {
    cfg.nu = f.nu;
    for (auto& a : cfg.algorithms) a.nu = f.nu;  // flag overrides config-file values
  }
  if (!f.kind.empty() || !f.means.empty()) {
    ScenarioSpec spec;
    spec.kind = f.kind.empty() ? ScenarioKind::Explicit : parse_kind_flag(f.kind);
    if (f.n > 0) spec.n = f.n;
    if (f.alpha > 0.0) spec.alpha = f.alpha;
    if (f.scale > 0.0) spec.scale = f.scale;
    spec.explicit_means = f.means;
    cfg.scenarios = {spec};
  }
  if (!f.algorithms.empty()) {
    cfg.algorithms.clear();
    for (const auto& label : f.algorithms)
      cfg.algorithms.push_back(parse_algorithm_flag(label, cfg.nu));
  }
  if (f.trials > 0) cfg.trials = f.trials;
  if (f.seed_set) cfg.master_seed = f.master_seed;
  if (f.max_pulls > 0) cfg.max_pulls = f.max_pulls;
  if (!f.checkpoints.empty()) cfg.checkpoints = f.checkpoints;
  cfg.workers = f.workers_set ? f.workers : (cfg.workers > 1 ? cfg.workers : default_workers());
  if (f.timing) cfg.record_timing = true;

  if (cfg.scenarios.empty()) throw std::invalid_argument("no scenarios configured");
  if (cfg.algorithms.empty()) throw std::invalid_argument("no algorithms configured");
  if (anytime && cfg.checkpoints.empty())
    std::cerr << "note: using the default geometric checkpoint grid\n";
  return cfg;
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write output file: " + path);
  out << content;
}

void emit_metadata(const ExperimentConfig& cfg, const std::string& command,
                   const std::string& output_path) {
  const auto meta = run_metadata_json(cfg, command);
  if (output_path.empty()) {
    std::cerr << meta << '\n';
  } else {
    write_file(output_path + ".meta.json", meta);
  }
}

std::string aggregates_path(const std::string& output_path) {
  const std::filesystem::path p(output_path);
  auto stem = p;
  stem.replace_extension();
  return stem.string() + ".aggregates" + (p.has_extension() ? p.extension().string() : ".csv");
}

int cmd_run_stopping(const RunFlags& flags) {
  const auto cfg = build_config(flags, /*anytime=*/false);
  std::cerr << "running " << cfg.scenarios.size() * cfg.algorithms.size() * cfg.trials
            << " trials on " << (cfg.workers > 0 ? cfg.workers : 0) << " worker(s)\n";
  const auto table = run_stopping_time_experiment(cfg);
  emit_metadata(cfg, "run-stopping", flags.output);

  if (flags.format == "json") {
    const auto doc = stopping_to_json(cfg, table);
    if (flags.output.empty())
      std::cout << doc << '\n';
    else
      write_file(flags.output, doc);
  } else {
    std::ostringstream trials, aggregates;
    write_trials_csv(trials, cfg, table);
    write_aggregates_csv(aggregates, cfg, table);
    if (flags.output.empty()) {
      std::cout << trials.str();
    } else {
      write_file(flags.output, trials.str());
      write_file(aggregates_path(flags.output), aggregates.str());
    }
  }
  std::cerr << "done\n";
  return 0;
}

int cmd_run_anytime(const RunFlags& flags) {
  const auto cfg = build_config(flags, /*anytime=*/true);
  std::cerr << "running " << cfg.scenarios.size() * cfg.algorithms.size() * cfg.trials
            << " trials on " << (cfg.workers > 0 ? cfg.workers : 0) << " worker(s)\n";
  const auto table = run_anytime_experiment(cfg);
  emit_metadata(cfg, "run-anytime", flags.output);

  if (flags.format == "json") {
    const auto doc = anytime_to_json(cfg, table);
    if (flags.output.empty())
      std::cout << doc << '\n';
    else
      write_file(flags.output, doc);
  } else {
    std::ostringstream csv;
    write_anytime_csv(csv, cfg, table);
    if (flags.output.empty())
      std::cout << csv.str();
    else
      write_file(flags.output, csv.str());
  }
  std::cerr << "done\n";
  return 0;
}

int cmd_scenarios(const RunFlags& flags) {
  auto cfg_scenarios = [&]() -> std::vector<ScenarioSpec> {
    if (!flags.config_path.empty()) return load_config_file(flags.config_path).scenarios;
    RunFlags copy = flags;
    if (copy.kind.empty() && copy.means.empty())
      throw std::invalid_argument("need --kind or --means (or --config)");
    ScenarioSpec spec;
    spec.kind = copy.kind.empty() ? ScenarioKind::Explicit : parse_kind_flag(copy.kind);
    if (copy.n > 0) spec.n = copy.n;
    if (copy.alpha > 0.0) spec.alpha = copy.alpha;
    if (copy.scale > 0.0) spec.scale = copy.scale;
    spec.explicit_means = copy.means;
    return {spec};
  }();

  for (const auto& spec : cfg_scenarios) {
    const auto inst = make_scenario(spec);
    std::cout << "scenario " << scenario_label(spec) << "  arms=" << inst.num_arms()
              << "  best=" << best_arm(inst) << "  scale=" << inst.max_scale() << '\n';
    std::cout << "arm,mean,gap\n";
    for (int i = 0; i < inst.num_arms(); ++i)
      std::cout << i << ',' << inst.arm(i).mean << ',' << inst.gap(i) << '\n';
    std::cout << "H1 = " << hardness_h1(inst);
    try {
      std::cout << "  H3 = " << hardness_h3(inst);
    } catch (const std::domain_error&) {
      std::cout << "  H3 undefined (a gap exceeds 1)";
    }
    std::cout << '\n';
  }
  return 0;
}

int cmd_presets(double nu, int n_arms, double sigma) {
  std::cout << "algorithm,eps,beta,a,delta,ls_delta,sigma\n";
  for (auto kind : {AlgorithmKind::LilUcbTheory, AlgorithmKind::LilUcbHeuristic,
                    AlgorithmKind::Ucb1, AlgorithmKind::SuccessiveElim,
                    AlgorithmKind::ExpGapElim, AlgorithmKind::Nonadaptive}) {
    for (bool ls : {false, true}) {
      if (ls && kind == AlgorithmKind::LilUcbHeuristic) continue;
      if (ls && kind == AlgorithmKind::SuccessiveElim) continue;
      if (!ls && (kind == AlgorithmKind::Ucb1 || kind == AlgorithmKind::Nonadaptive))
        continue;  // without the stopping rule these never terminate
      AlgorithmSpec spec;
      spec.kind = kind;
      spec.nu = nu;
      spec.ls_enabled = ls;
      const auto p = resolve_algorithm(spec, n_arms, sigma);
      std::cout << algorithm_label(spec) << ',' << p.eps << ',' << p.beta << ',' << p.a << ','
                << p.delta << ',' << p.ls_delta << ',' << p.sigma << '\n';
    }
  }
  return 0;
}

struct VerifyFlags {
  std::vector<double> eps{1.0};
  std::vector<double> delta{0.05};
  double sigma = 1.0;
  std::int64_t horizon = 100'000;
  std::int64_t walks = 10'000;
  std::uint64_t seed = 20240417;
  double slack = 3.0;
  int workers = 0;
  bool workers_set = false;
};

int cmd_verify_lil(const VerifyFlags& f) {
  if (f.walks < 1 || f.horizon < 1) throw std::invalid_argument("need walks >= 1, horizon >= 1");
  const int workers = f.workers_set ? f.workers : default_workers();

  // reject invalid pairs up front, with the valid range
  for (double eps : f.eps) {
    if (!(eps > 0.0)) throw std::invalid_argument("Strict bound requires eps > 0");
    const double limit = std::log1p(eps) / std::numbers::e;
    for (double delta : f.delta) {
      if (!(delta > 0.0 && delta < limit)) {
        std::ostringstream msg;
        msg << "delta=" << delta << " invalid at eps=" << eps
            << "; valid range is (0, " << limit << ")";
        throw std::invalid_argument(msg.str());
      }
    }
  }

  bool exceeded = false;
  std::cout << "eps,delta,walks,horizon,failures,empirical_rate,bound,limit,ok\n";
  for (double eps : f.eps) {
    for (double delta : f.delta) {
      std::cerr << "verifying eps=" << eps << " delta=" << delta << " (" << f.walks
                << " walks x " << f.horizon << " steps)\n";
      const auto v = verify_lil_bound(eps, delta, f.sigma, f.horizon, f.walks, f.seed, workers);
      const double limit =
          v.bound + f.slack * std::sqrt(v.bound / static_cast<double>(f.walks));
      const bool ok = v.empirical_rate <= limit;
      exceeded = exceeded || !ok;
      std::cout << eps << ',' << delta << ',' << v.num_walks << ',' << v.horizon << ','
                << v.failures << ',' << v.empirical_rate << ',' << v.bound << ',' << limit
                << ',' << (ok ? "true" : "false") << '\n';
    }
  }
  return exceeded ? 2 : 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"best-arm identification experiments with finite-LIL confidence bounds"};
  app.set_version_flag("--version", std::string(kVersion));
  app.require_subcommand(1);

  RunFlags stopping_flags, anytime_flags, scenario_flags;
  VerifyFlags verify_flags;
  double presets_nu = 0.1;
  int presets_n = 10;
  double presets_sigma = kDefaultScale;

  auto* scenarios = app.add_subcommand("scenarios", "print means, gaps, H1, H3 for a scenario");
  add_run_flags(scenarios, scenario_flags);

  auto* run_stopping =
      app.add_subcommand("run-stopping", "run algorithms to their stopping times");
  add_run_flags(run_stopping, stopping_flags);

  auto* run_anytime =
      app.add_subcommand("run-anytime", "anytime error probability at checkpoints");
  add_run_flags(run_anytime, anytime_flags);

  auto* verify = app.add_subcommand("verify-lil", "Monte-Carlo check of the LIL envelope");
  verify->add_option("--eps", verify_flags.eps, "eps grid")->delimiter(',');
  verify->add_option("--delta", verify_flags.delta, "delta grid")->delimiter(',');
  verify->add_option("--sigma", verify_flags.sigma, "walk scale");
  verify->add_option("--horizon", verify_flags.horizon, "steps per walk");
  verify->add_option("--walks", verify_flags.walks, "number of walks");
  verify->add_option("--seed", verify_flags.seed, "seed");
  verify->add_option("--slack", verify_flags.slack,
                     "statistical slack in units of sqrt(bound/walks)");
  verify->add_option("--workers", verify_flags.workers, "worker threads")
      ->each([&](const std::string&) { verify_flags.workers_set = true; });

  auto* presets = app.add_subcommand("presets", "print resolved algorithm parameters");
  presets->add_option("--nu", presets_nu, "input confidence");
  presets->add_option("--n", presets_n, "number of arms");
  presets->add_option("--sigma", presets_sigma, "reward scale");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (scenarios->parsed()) return cmd_scenarios(scenario_flags);
    if (run_stopping->parsed()) return cmd_run_stopping(stopping_flags);
    if (run_anytime->parsed()) return cmd_run_anytime(anytime_flags);
    if (verify->parsed()) return cmd_verify_lil(verify_flags);
    if (presets->parsed()) return cmd_presets(presets_nu, presets_n, presets_sigma);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 1;
}

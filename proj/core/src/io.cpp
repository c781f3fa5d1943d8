#include "bestarm/io.hpp"

#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace bestarm {

namespace {

using nlohmann::json;

std::string fmt(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.10g", x);
  return buf;
}

std::string scenario_kind_name(ScenarioKind kind) {
  switch (kind) {
    case ScenarioKind::OneSparse: return "one_sparse";
    case ScenarioKind::Alpha: return "alpha";
    case ScenarioKind::Explicit: return "explicit";
  }
  return "unknown";
}

ScenarioKind parse_scenario_kind(std::string name) {
  for (auto& ch : name)
    if (ch == '-') ch = '_';
  if (name == "one_sparse") return ScenarioKind::OneSparse;
  if (name == "alpha") return ScenarioKind::Alpha;
  if (name == "explicit") return ScenarioKind::Explicit;
  throw std::invalid_argument("unknown scenario kind: " + name);
}

json scenario_json(const ScenarioSpec& spec) {
  json j;
  j["kind"] = scenario_kind_name(spec.kind);
  switch (spec.kind) {
    case ScenarioKind::OneSparse:
      j["n"] = spec.n;
      break;
    case ScenarioKind::Alpha:
      j["n"] = spec.n;
      j["alpha"] = spec.alpha;
      break;
    case ScenarioKind::Explicit:
      j["means"] = spec.explicit_means;
      break;
  }
  j["scale"] = spec.scale;
  return j;
}

ScenarioSpec scenario_from(const json& j) {
  ScenarioSpec spec;
  spec.kind = parse_scenario_kind(j.at("kind").get<std::string>());
  if (j.contains("n")) spec.n = j.at("n").get<int>();
  if (j.contains("alpha")) spec.alpha = j.at("alpha").get<double>();
  if (j.contains("means")) spec.explicit_means = j.at("means").get<std::vector<double>>();
  if (spec.kind == ScenarioKind::Explicit)
    spec.n = static_cast<int>(spec.explicit_means.size());
  if (j.contains("scale")) spec.scale = j.at("scale").get<double>();
  return spec;
}

json algorithm_json(const AlgorithmSpec& spec) {
  json j;
  j["kind"] = algorithm_kind_name(spec.kind);
  j["nu"] = spec.nu;
  j["ls"] = spec.ls_enabled;
  if (spec.eps) j["eps"] = *spec.eps;
  if (spec.beta) j["beta"] = *spec.beta;
  if (spec.a) j["a"] = *spec.a;
  if (spec.delta) j["delta"] = *spec.delta;
  if (spec.sigma) j["sigma"] = *spec.sigma;
  return j;
}

AlgorithmSpec algorithm_from(const json& j, double default_nu) {
  AlgorithmSpec spec;
  const auto kind = parse_algorithm_kind(j.at("kind").get<std::string>());
  if (!kind) throw std::invalid_argument("unknown algorithm kind: " +
                                         j.at("kind").get<std::string>());
  spec.kind = *kind;
  spec.nu = j.contains("nu") ? j.at("nu").get<double>() : default_nu;
  if (j.contains("ls")) spec.ls_enabled = j.at("ls").get<bool>();
  if (j.contains("eps")) spec.eps = j.at("eps").get<double>();
  if (j.contains("beta")) spec.beta = j.at("beta").get<double>();
  if (j.contains("a")) spec.a = j.at("a").get<double>();
  if (j.contains("delta")) spec.delta = j.at("delta").get<double>();
  if (j.contains("sigma")) spec.sigma = j.at("sigma").get<double>();
  return spec;
}

json config_json(const ExperimentConfig& cfg) {
  json j;
  j["scenarios"] = json::array();
  for (const auto& s : cfg.scenarios) j["scenarios"].push_back(scenario_json(s));
  j["algorithms"] = json::array();
  for (const auto& a : cfg.algorithms) j["algorithms"].push_back(algorithm_json(a));
  if (cfg.trials > 0) j["trials"] = cfg.trials;
  j["nu"] = cfg.nu;
  j["master_seed"] = cfg.master_seed;
  j["max_pulls"] = cfg.max_pulls;
  if (!cfg.checkpoints.empty()) j["checkpoints"] = cfg.checkpoints;
  j["workers"] = cfg.workers;
  j["timing"] = cfg.record_timing;
  return j;
}

ExperimentConfig config_from(const json& j) {
  ExperimentConfig cfg;
  if (j.contains("nu")) cfg.nu = j.at("nu").get<double>();
  if (j.contains("scenarios"))
    for (const auto& s : j.at("scenarios")) cfg.scenarios.push_back(scenario_from(s));
  if (j.contains("algorithms"))
    for (const auto& a : j.at("algorithms"))
      cfg.algorithms.push_back(algorithm_from(a, cfg.nu));
  if (j.contains("trials")) cfg.trials = j.at("trials").get<int>();
  if (j.contains("master_seed")) cfg.master_seed = j.at("master_seed").get<std::uint64_t>();
  if (j.contains("max_pulls")) cfg.max_pulls = j.at("max_pulls").get<std::int64_t>();
  if (j.contains("checkpoints"))
    cfg.checkpoints = j.at("checkpoints").get<std::vector<std::int64_t>>();
  if (j.contains("workers")) cfg.workers = j.at("workers").get<int>();
  if (j.contains("timing")) cfg.record_timing = j.at("timing").get<bool>();
  return cfg;
}

}  // namespace

std::string scenario_to_json(const ScenarioSpec& spec) { return scenario_json(spec).dump(); }

ScenarioSpec scenario_from_json(const std::string& text) {
  return scenario_from(json::parse(text));
}

std::string algorithm_to_json(const AlgorithmSpec& spec) { return algorithm_json(spec).dump(); }

AlgorithmSpec algorithm_from_json(const std::string& text) {
  return algorithm_from(json::parse(text), 0.1);
}

std::string config_to_json(const ExperimentConfig& cfg) { return config_json(cfg).dump(2); }

ExperimentConfig config_from_json(const std::string& text) {
  return config_from(json::parse(text));
}

ExperimentConfig load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config file: " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return config_from_json(buf.str());
}

void write_trials_csv(std::ostream& out, const ExperimentConfig& cfg,
                      const StoppingTable& table) {
  out << "scenario,n,algorithm,trial,seed,total_pulls,stopped,recommended,correct,wall_ms\n";
  for (const auto& r : table.rows) {
    const auto& scenario = cfg.scenarios[static_cast<std::size_t>(r.scenario_id)];
    const auto& algorithm = cfg.algorithms[static_cast<std::size_t>(r.algorithm_id)];
    char wall[32];
    std::snprintf(wall, sizeof(wall), "%.3f", cfg.record_timing ? r.wall_ms : 0.0);
    out << scenario_label(scenario) << ',' << scenario.n << ',' << algorithm_label(algorithm)
        << ',' << r.trial << ',' << r.seed << ',' << r.total_pulls << ','
        << (r.stopped ? "true" : "false") << ',' << r.recommended << ','
        << (r.correct ? "true" : "false") << ',' << wall << '\n';
  }
}

void write_aggregates_csv(std::ostream& out, const ExperimentConfig& cfg,
                          const StoppingTable& table) {
  out << "scenario,n,algorithm,trials,stopped_trials,error_rate,mean_pulls,median_pulls,"
         "stdev_pulls,h1,mean_pulls_per_h1,median_pulls_per_h1\n";
  for (const auto& c : table.cells) {
    const auto& scenario = cfg.scenarios[static_cast<std::size_t>(c.scenario_id)];
    const auto& algorithm = cfg.algorithms[static_cast<std::size_t>(c.algorithm_id)];
    out << scenario_label(scenario) << ',' << scenario.n << ',' << algorithm_label(algorithm)
        << ',' << c.trials << ',' << c.stopped_trials << ',' << fmt(c.error_rate) << ','
        << fmt(c.mean_pulls) << ',' << fmt(c.median_pulls) << ',' << fmt(c.stdev_pulls) << ','
        << fmt(c.h1) << ',' << fmt(c.mean_pulls_per_h1) << ',' << fmt(c.median_pulls_per_h1)
        << '\n';
  }
}

void write_anytime_csv(std::ostream& out, const ExperimentConfig& cfg,
                       const AnytimeTable& table) {
  out << "scenario,n,algorithm,checkpoint,error_rate,trials\n";
  for (const auto& curve : table.curves) {
    const auto& scenario = cfg.scenarios[static_cast<std::size_t>(curve.scenario_id)];
    const auto& algorithm = cfg.algorithms[static_cast<std::size_t>(curve.algorithm_id)];
    for (std::size_t c = 0; c < curve.checkpoints.size(); ++c) {
      out << scenario_label(scenario) << ',' << scenario.n << ','
          << algorithm_label(algorithm) << ',' << curve.checkpoints[c] << ','
          << fmt(curve.error_rate[c]) << ',' << curve.trials << '\n';
    }
  }
}

namespace {

json trial_row_json(const ExperimentConfig& cfg, const TrialResult& r) {
  const auto& scenario = cfg.scenarios[static_cast<std::size_t>(r.scenario_id)];
  const auto& algorithm = cfg.algorithms[static_cast<std::size_t>(r.algorithm_id)];
  json row;
  row["scenario"] = scenario_label(scenario);
  row["n"] = scenario.n;
  row["algorithm"] = algorithm_label(algorithm);
  row["trial"] = r.trial;
  row["seed"] = r.seed;
  row["total_pulls"] = r.total_pulls;
  row["stopped"] = r.stopped;
  row["recommended"] = r.recommended;
  row["correct"] = r.correct;
  row["wall_ms"] = cfg.record_timing ? r.wall_ms : 0.0;
  return row;
}

}  // namespace

std::string stopping_to_json(const ExperimentConfig& cfg, const StoppingTable& table) {
  json j;
  j["trials"] = json::array();
  for (const auto& r : table.rows) j["trials"].push_back(trial_row_json(cfg, r));
  j["aggregates"] = json::array();
  for (const auto& c : table.cells) {
    const auto& scenario = cfg.scenarios[static_cast<std::size_t>(c.scenario_id)];
    const auto& algorithm = cfg.algorithms[static_cast<std::size_t>(c.algorithm_id)];
    json cell;
    cell["scenario"] = scenario_label(scenario);
    cell["n"] = scenario.n;
    cell["algorithm"] = algorithm_label(algorithm);
    cell["trials"] = c.trials;
    cell["stopped_trials"] = c.stopped_trials;
    cell["error_rate"] = c.error_rate;
    cell["mean_pulls"] = c.mean_pulls;
    cell["median_pulls"] = c.median_pulls;
    cell["stdev_pulls"] = c.stdev_pulls;
    cell["h1"] = c.h1;
    cell["mean_pulls_per_h1"] = c.mean_pulls_per_h1;
    cell["median_pulls_per_h1"] = c.median_pulls_per_h1;
    j["aggregates"].push_back(cell);
  }
  return j.dump(2);
}

std::string anytime_to_json(const ExperimentConfig& cfg, const AnytimeTable& table) {
  json j;
  j["checkpoints"] = table.checkpoints;
  j["curves"] = json::array();
  for (const auto& curve : table.curves) {
    const auto& scenario = cfg.scenarios[static_cast<std::size_t>(curve.scenario_id)];
    const auto& algorithm = cfg.algorithms[static_cast<std::size_t>(curve.algorithm_id)];
    json c;
    c["scenario"] = scenario_label(scenario);
    c["n"] = scenario.n;
    c["algorithm"] = algorithm_label(algorithm);
    c["trials"] = curve.trials;
    c["error_rate"] = curve.error_rate;
    c["mean_stop_pulls"] = curve.mean_stop_pulls;
    c["stop_rate"] = curve.stop_rate;
    j["curves"].push_back(c);
  }
  return j.dump(2);
}

std::string run_metadata_json(const ExperimentConfig& cfg, const std::string& command) {
  json j;
  j["version"] = kVersion;
  j["command"] = command;
  j["config"] = json::parse(config_to_json(cfg));
  j["resolved"] = json::array();
  for (std::size_t s = 0; s < cfg.scenarios.size(); ++s) {
    const auto instance = make_scenario(cfg.scenarios[s]);
    for (std::size_t a = 0; a < cfg.algorithms.size(); ++a) {
      const auto p =
          resolve_algorithm(cfg.algorithms[a], instance.num_arms(), instance.max_scale());
      json r;
      r["scenario"] = scenario_label(cfg.scenarios[s]);
      r["n_arms"] = instance.num_arms();
      r["h1"] = hardness_h1(instance);
      try {
        r["h3"] = hardness_h3(instance);
      } catch (const std::domain_error&) {
        r["h3"] = nullptr;  // defined only for gaps in (0,1]
      }
      r["algorithm"] = algorithm_label(cfg.algorithms[a]);
      r["eps"] = p.eps;
      r["beta"] = p.beta;
      r["a"] = p.a;
      r["delta"] = p.delta;
      r["ls_delta"] = p.ls_delta;
      r["sigma"] = p.sigma;
      r["variant"] = p.variant == BoundVariant::PlusTwo ? "plus_two" : "strict";
      j["resolved"].push_back(r);
    }
  }
  return j.dump(2);
}

}  // namespace bestarm

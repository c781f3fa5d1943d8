#pragma once

#include <iosfwd>
#include <string>

#include "bestarm/harness.hpp"

namespace bestarm {

inline constexpr const char* kVersion = "0.1.0";

// JSON wire formats, e.g.
//   {"kind": "alpha", "n": 100, "alpha": 0.3, "scale": 0.5}
//   {"kind": "lil_ucb_heuristic", "nu": 0.1, "ls": false}
// and one document for a full ExperimentConfig.
std::string scenario_to_json(const ScenarioSpec& spec);
ScenarioSpec scenario_from_json(const std::string& text);
std::string algorithm_to_json(const AlgorithmSpec& spec);
AlgorithmSpec algorithm_from_json(const std::string& text);
std::string config_to_json(const ExperimentConfig& cfg);
ExperimentConfig config_from_json(const std::string& text);
ExperimentConfig load_config_file(const std::string& path);

// CSV emission. Headers are fixed:
//   trials:    scenario,n,algorithm,trial,seed,total_pulls,stopped,recommended,correct,wall_ms
//   anytime:   scenario,n,algorithm,checkpoint,error_rate,trials
//   aggregate: scenario,n,algorithm,trials,stopped_trials,error_rate,mean_pulls,median_pulls,
//              stdev_pulls,h1,mean_pulls_per_h1,median_pulls_per_h1
// wall_ms is written as 0 unless cfg.record_timing is set, keeping output
// byte-identical across worker counts.
void write_trials_csv(std::ostream& out, const ExperimentConfig& cfg, const StoppingTable& table);
void write_aggregates_csv(std::ostream& out, const ExperimentConfig& cfg,
                          const StoppingTable& table);
void write_anytime_csv(std::ostream& out, const ExperimentConfig& cfg, const AnytimeTable& table);

// JSON mirrors of the same tables.
std::string stopping_to_json(const ExperimentConfig& cfg, const StoppingTable& table);
std::string anytime_to_json(const ExperimentConfig& cfg, const AnytimeTable& table);

// Reproduction metadata: resolved per-algorithm presets, scenario hardness,
// seed, and version.
std::string run_metadata_json(const ExperimentConfig& cfg, const std::string& command);

}  // namespace bestarm

#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "bestarm/bandit.hpp"
#include "bestarm/samplers.hpp"

namespace bestarm {

struct ExperimentConfig {
  std::vector<ScenarioSpec> scenarios;
  std::vector<AlgorithmSpec> algorithms;
  int trials = 0;  // 0 = per-experiment default: 40 stopping, 5000 anytime
  double nu = 0.1;
  std::uint64_t master_seed = 20240417ULL;
  std::int64_t max_pulls = 1'000'000'000;
  std::vector<std::int64_t> checkpoints;  // anytime mode; empty = geometric default
  int workers = 1;                        // 0 = hardware concurrency
  bool record_timing = false;             // real wall_ms in outputs breaks byte-identity
};

struct TrialResult {
  int scenario_id = 0;
  int algorithm_id = 0;
  int trial = 0;
  std::uint64_t seed = 0;
  std::int64_t total_pulls = 0;
  bool stopped = false;
  int recommended = -1;
  bool correct = false;              // meaningful only when stopped
  std::vector<std::uint8_t> anytime_errors;  // per checkpoint, 1 = recommendation wrong
  double wall_ms = 0.0;
};

struct CellAggregate {
  int scenario_id = 0;
  int algorithm_id = 0;
  int trials = 0;
  int stopped_trials = 0;
  double error_rate = 0.0;  // trials not stopped-and-correct / trials
  double mean_pulls = 0.0;
  double median_pulls = 0.0;
  double stdev_pulls = 0.0;
  double h1 = 0.0;
  double mean_pulls_per_h1 = 0.0;
  double median_pulls_per_h1 = 0.0;
};

struct StoppingTable {
  std::vector<TrialResult> rows;  // ordered by (scenario, algorithm, trial)
  std::vector<CellAggregate> cells;
};

struct ErrorCurve {
  int scenario_id = 0;
  int algorithm_id = 0;
  int trials = 0;
  std::vector<std::int64_t> checkpoints;
  std::vector<double> error_rate;  // fraction of trials wrong at each checkpoint
  double mean_stop_pulls = 0.0;    // over stopped trials; 0 when none stopped
  double stop_rate = 0.0;
};

struct AnytimeTable {
  std::vector<std::int64_t> checkpoints;
  std::vector<ErrorCurve> curves;  // ordered by (scenario, algorithm)
};

// Collision-resistant mixing of the logical trial coordinates; independent of
// worker count by construction.
std::uint64_t derive_trial_seed(std::uint64_t master_seed, int scenario_id, int algorithm_id,
                                int trial);

// Drives one sampler to its stopping time or max_pulls, recording the
// empirical-mean recommendation at each checkpoint. After the sampler stops,
// its own recommendation is frozen for all later checkpoints. Checkpoints
// reached before every arm has a pull record no recommendation and count as
// errors.
TrialResult run_trial(const AlgorithmSpec& algorithm, const BanditInstance& instance,
                      std::uint64_t seed, std::int64_t max_pulls,
                      std::span<const std::int64_t> checkpoints);

// One cell per (scenario, algorithm), cfg.trials rows each.
StoppingTable run_stopping_time_experiment(const ExperimentConfig& cfg);

// Empirical anytime error probability per checkpoint. cfg.checkpoints empty
// selects a geometric grid (ratio 1.25) from n_arms to max_pulls.
AnytimeTable run_anytime_experiment(const ExperimentConfig& cfg);

std::vector<std::int64_t> default_checkpoints(std::int64_t first, std::int64_t last);

struct LilVerification {
  double eps = 0.0;
  double delta = 0.0;
  double sigma = 0.0;
  std::int64_t horizon = 0;
  std::int64_t num_walks = 0;
  std::int64_t failures = 0;
  double empirical_rate = 0.0;
  double bound = 0.0;  // (2+eps)/eps * (delta/log(1+eps))^(1+eps)
};

// Monte-Carlo check of the finite-LIL envelope: fraction of zero-mean
// Gaussian walks whose partial sums ever exceed
// (1+sqrt(eps)) sqrt(2 sigma^2 (1+eps) t log(log((1+eps)t)/delta)) within the
// horizon, against the analytic failure bound. Requires Strict-valid params.
LilVerification verify_lil_bound(double eps, double delta, double sigma, std::int64_t horizon,
                                 std::int64_t num_walks, std::uint64_t seed, int workers = 1);

// Runs fn(i) for i in [0, count) on `workers` threads (0 = hardware).
void parallel_for(std::int64_t count, int workers, const std::function<void(std::int64_t)>& fn);

}  // namespace bestarm

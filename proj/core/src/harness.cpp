#include "bestarm/harness.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <mutex>
#include <numeric>
#include <stdexcept>
#include <thread>

namespace bestarm {

std::uint64_t derive_trial_seed(std::uint64_t master_seed, int scenario_id, int algorithm_id,
                                int trial) {
  std::uint64_t h = master_seed;
  h = mix_seed(h, static_cast<std::uint64_t>(scenario_id));
  h = mix_seed(h, static_cast<std::uint64_t>(algorithm_id));
  h = mix_seed(h, static_cast<std::uint64_t>(trial));
  return h;
}

void parallel_for(std::int64_t count, int workers, const std::function<void(std::int64_t)>& fn) {
  if (workers <= 0) workers = static_cast<int>(std::thread::hardware_concurrency());
  if (workers < 1) workers = 1;
  if (workers == 1 || count <= 1) {
    for (std::int64_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::int64_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto body = [&] {
    for (;;) {
      const std::int64_t i = next.fetch_add(1, std::memory_order_relaxed);
      if (i >= count) return;
      try {
        fn(i);
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!error) error = std::current_exception();
        return;
      }
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(workers));
  for (int w = 0; w < workers; ++w) pool.emplace_back(body);
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

TrialResult run_trial(const AlgorithmSpec& algorithm, const BanditInstance& instance,
                      std::uint64_t seed, std::int64_t max_pulls,
                      std::span<const std::int64_t> checkpoints) {
  const auto start = std::chrono::steady_clock::now();
  for (std::size_t i = 1; i < checkpoints.size(); ++i)
    if (checkpoints[i] <= checkpoints[i - 1])
      throw std::invalid_argument("checkpoints must be strictly increasing");
  TrialResult result;
  result.seed = seed;
  result.anytime_errors.assign(checkpoints.size(), 1);

  Rng rng(seed);
  auto sampler = make_sampler(algorithm, instance.num_arms(), instance.max_scale(), rng);
  const int truth = best_arm(instance);

  std::size_t next_checkpoint = 0;
  std::int64_t pulls = 0;
  try {
    while (!sampler->status().stopped && pulls < max_pulls) {
      const int arm = sampler->next_arm();
      sampler->update(arm, sample_arm(instance, arm, rng));
      ++pulls;
      while (next_checkpoint < checkpoints.size() && checkpoints[next_checkpoint] == pulls) {
        int rec = -1;
        if (sampler->status().stopped)
          rec = sampler->status().recommended;
        else if (sampler->stats().all_pulled())
          rec = sampler->anytime_best();
        result.anytime_errors[next_checkpoint] = rec == truth ? 0 : 1;
        ++next_checkpoint;
      }
    }
  } catch (const std::logic_error& e) {
    throw std::runtime_error(std::string("sampler contract violation in trial: ") + e.what());
  }

  result.total_pulls = pulls;
  result.stopped = sampler->status().stopped;
  if (result.stopped) {
    result.recommended = sampler->status().recommended;
    result.correct = result.recommended == truth;
    // recommendation frozen for all remaining checkpoints
    for (std::size_t c = next_checkpoint; c < checkpoints.size(); ++c)
      result.anytime_errors[c] = result.correct ? 0 : 1;
  } else {
    const int rec = sampler->stats().all_pulled() ? sampler->anytime_best() : -1;
    result.recommended = rec;
    result.correct = false;
    for (std::size_t c = next_checkpoint; c < checkpoints.size(); ++c)
      result.anytime_errors[c] = rec == truth ? 0 : 1;
  }
  result.wall_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
          .count();
  return result;
}

namespace {

double median_of(std::vector<double> v) {
  if (v.empty()) return 0.0;
  std::sort(v.begin(), v.end());
  const std::size_t k = v.size() / 2;
  if (v.size() % 2 == 1) return v[k];
  return 0.5 * (v[k - 1] + v[k]);
}

CellAggregate aggregate_cell(int scenario_id, int algorithm_id, double h1,
                             std::span<const TrialResult> rows) {
  CellAggregate cell;
  cell.scenario_id = scenario_id;
  cell.algorithm_id = algorithm_id;
  cell.trials = static_cast<int>(rows.size());
  std::vector<double> pulls;
  pulls.reserve(rows.size());
  int errors = 0;
  for (const auto& r : rows) {
    pulls.push_back(static_cast<double>(r.total_pulls));
    if (r.stopped) ++cell.stopped_trials;
    if (!(r.stopped && r.correct)) ++errors;
  }
  cell.error_rate = rows.empty() ? 0.0 : static_cast<double>(errors) / rows.size();
  cell.mean_pulls = pulls.empty() ? 0.0
                                  : std::accumulate(pulls.begin(), pulls.end(), 0.0) /
                                        static_cast<double>(pulls.size());
  cell.median_pulls = median_of(pulls);
  double ss = 0.0;
  for (double p : pulls) ss += (p - cell.mean_pulls) * (p - cell.mean_pulls);
  cell.stdev_pulls = pulls.size() > 1
                         ? std::sqrt(ss / static_cast<double>(pulls.size() - 1))
                         : 0.0;
  cell.h1 = h1;
  cell.mean_pulls_per_h1 = cell.mean_pulls / h1;
  cell.median_pulls_per_h1 = cell.median_pulls / h1;
  return cell;
}

}  // namespace

StoppingTable run_stopping_time_experiment(const ExperimentConfig& raw) {
  ExperimentConfig cfg = raw;
  if (cfg.trials == 0) cfg.trials = 40;
  if (cfg.trials < 1) throw std::invalid_argument("trials must be >= 1");
  std::vector<BanditInstance> instances;
  instances.reserve(cfg.scenarios.size());
  for (const auto& s : cfg.scenarios) instances.push_back(make_scenario(s));

  const auto n_cells = cfg.scenarios.size() * cfg.algorithms.size();
  const auto n_tasks = static_cast<std::int64_t>(n_cells) * cfg.trials;
  StoppingTable table;
  table.rows.resize(static_cast<std::size_t>(n_tasks));

  parallel_for(n_tasks, cfg.workers, [&](std::int64_t task) {
    const int trial = static_cast<int>(task % cfg.trials);
    const auto cell = static_cast<std::size_t>(task / cfg.trials);
    const int algorithm_id = static_cast<int>(cell % cfg.algorithms.size());
    const int scenario_id = static_cast<int>(cell / cfg.algorithms.size());
    const auto seed = derive_trial_seed(cfg.master_seed, scenario_id, algorithm_id, trial);
    auto row = run_trial(cfg.algorithms[static_cast<std::size_t>(algorithm_id)],
                         instances[static_cast<std::size_t>(scenario_id)], seed, cfg.max_pulls,
                         {});
    row.scenario_id = scenario_id;
    row.algorithm_id = algorithm_id;
    row.trial = trial;
    table.rows[static_cast<std::size_t>(task)] = std::move(row);
  });

  for (std::size_t cell = 0; cell < n_cells; ++cell) {
    const int algorithm_id = static_cast<int>(cell % cfg.algorithms.size());
    const int scenario_id = static_cast<int>(cell / cfg.algorithms.size());
    const auto first = cell * static_cast<std::size_t>(cfg.trials);
    table.cells.push_back(aggregate_cell(
        scenario_id, algorithm_id, hardness_h1(instances[static_cast<std::size_t>(scenario_id)]),
        std::span<const TrialResult>(table.rows).subspan(first,
                                                         static_cast<std::size_t>(cfg.trials))));
  }
  return table;
}

std::vector<std::int64_t> default_checkpoints(std::int64_t first, std::int64_t last) {
  std::vector<std::int64_t> grid;
  if (first < 1) first = 1;
  for (double x = static_cast<double>(first); x <= static_cast<double>(last); x *= 1.25) {
    const auto t = static_cast<std::int64_t>(std::llround(x));
    if (t > last) break;
    if (grid.empty() || t > grid.back()) grid.push_back(t);
  }
  if (grid.empty() || grid.back() != last) grid.push_back(last);
  return grid;
}

AnytimeTable run_anytime_experiment(const ExperimentConfig& raw) {
  ExperimentConfig cfg = raw;
  if (cfg.trials == 0) cfg.trials = 5000;
  if (cfg.trials < 1) throw std::invalid_argument("trials must be >= 1");
  std::vector<BanditInstance> instances;
  instances.reserve(cfg.scenarios.size());
  int max_arms = 0;
  for (const auto& s : cfg.scenarios) {
    instances.push_back(make_scenario(s));
    max_arms = std::max(max_arms, instances.back().num_arms());
  }

  AnytimeTable table;
  table.checkpoints = cfg.checkpoints.empty()
                          ? default_checkpoints(max_arms, cfg.max_pulls)
                          : cfg.checkpoints;
  for (std::size_t i = 1; i < table.checkpoints.size(); ++i)
    if (table.checkpoints[i] <= table.checkpoints[i - 1])
      throw std::invalid_argument("checkpoints must be strictly increasing");

  const auto n_cells = cfg.scenarios.size() * cfg.algorithms.size();
  const auto n_tasks = static_cast<std::int64_t>(n_cells) * cfg.trials;
  std::vector<TrialResult> rows(static_cast<std::size_t>(n_tasks));

  parallel_for(n_tasks, cfg.workers, [&](std::int64_t task) {
    const int trial = static_cast<int>(task % cfg.trials);
    const auto cell = static_cast<std::size_t>(task / cfg.trials);
    const int algorithm_id = static_cast<int>(cell % cfg.algorithms.size());
    const int scenario_id = static_cast<int>(cell / cfg.algorithms.size());
    const auto seed = derive_trial_seed(cfg.master_seed, scenario_id, algorithm_id, trial);
    rows[static_cast<std::size_t>(task)] =
        run_trial(cfg.algorithms[static_cast<std::size_t>(algorithm_id)],
                  instances[static_cast<std::size_t>(scenario_id)], seed, cfg.max_pulls,
                  table.checkpoints);
  });

  for (std::size_t cell = 0; cell < n_cells; ++cell) {
    ErrorCurve curve;
    curve.algorithm_id = static_cast<int>(cell % cfg.algorithms.size());
    curve.scenario_id = static_cast<int>(cell / cfg.algorithms.size());
    curve.trials = cfg.trials;
    curve.checkpoints = table.checkpoints;
    curve.error_rate.assign(table.checkpoints.size(), 0.0);
    std::int64_t stop_sum = 0;
    int stopped = 0;
    const auto first = cell * static_cast<std::size_t>(cfg.trials);
    for (int t = 0; t < cfg.trials; ++t) {
      const auto& row = rows[first + static_cast<std::size_t>(t)];
      for (std::size_t c = 0; c < table.checkpoints.size(); ++c)
        curve.error_rate[c] += row.anytime_errors[c];
      if (row.stopped) {
        ++stopped;
        stop_sum += row.total_pulls;
      }
    }
    for (auto& e : curve.error_rate) e /= static_cast<double>(cfg.trials);
    curve.stop_rate = static_cast<double>(stopped) / cfg.trials;
    curve.mean_stop_pulls =
        stopped > 0 ? static_cast<double>(stop_sum) / stopped : 0.0;
    table.curves.push_back(std::move(curve));
  }
  return table;
}

LilVerification verify_lil_bound(double eps, double delta, double sigma, std::int64_t horizon,
                                 std::int64_t num_walks, std::uint64_t seed, int workers) {
  const LilParams strict{eps, delta, sigma, BoundVariant::Strict};
  if (auto why = validate_params(strict))
    throw std::invalid_argument("verify_lil_bound: " + *why);
  if (horizon < 1 || num_walks < 1)
    throw std::invalid_argument("verify_lil_bound: horizon and num_walks must be >= 1");

  LilVerification v;
  v.eps = eps;
  v.delta = delta;
  v.sigma = sigma;
  v.horizon = horizon;
  v.num_walks = num_walks;
  v.bound = (2.0 + eps) / eps * std::pow(delta / std::log1p(eps), 1.0 + eps);

  // Envelope on partial sums, i.e. t * (mean-deviation radius at t), computed
  // in sum form directly so t = 1 is covered for every Strict-valid pair.
  std::vector<double> threshold(static_cast<std::size_t>(horizon));
  const double pref = (1.0 + std::sqrt(eps));
  for (std::int64_t t = 1; t <= horizon; ++t) {
    const double td = static_cast<double>(t);
    const double level = std::log(std::log((1.0 + eps) * td) / delta);
    threshold[static_cast<std::size_t>(t - 1)] =
        pref * std::sqrt(2.0 * sigma * sigma * (1.0 + eps) * td * level);
  }

  std::atomic<std::int64_t> failures{0};
  parallel_for(num_walks, workers, [&](std::int64_t walk) {
    Rng rng(mix_seed(seed, static_cast<std::uint64_t>(walk)));
    double sum = 0.0;
    for (std::int64_t t = 0; t < horizon; ++t) {
      sum += sigma * rng.gaussian();
      if (sum > threshold[static_cast<std::size_t>(t)]) {
        failures.fetch_add(1, std::memory_order_relaxed);
        return;
      }
    }
  });
  v.failures = failures.load();
  v.empirical_rate = static_cast<double>(v.failures) / static_cast<double>(num_walks);
  return v;
}

}  // namespace bestarm

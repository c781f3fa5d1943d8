#include <doctest.h>

#include <sstream>

#include "bestarm/io.hpp"

using namespace bestarm;

TEST_CASE("scenario JSON round trip") {
  const auto spec = scenario_from_json(R"({"kind": "alpha", "n": 100, "alpha": 0.3, "scale": 0.5})");
  CHECK(spec.kind == ScenarioKind::Alpha);
  CHECK(spec.n == 100);
  CHECK(spec.alpha == 0.3);
  CHECK(spec.scale == 0.5);

  const auto back = scenario_from_json(scenario_to_json(spec));
  CHECK(back.kind == spec.kind);
  CHECK(back.n == spec.n);
  CHECK(back.alpha == spec.alpha);

  // hyphenated kind names are accepted
  CHECK(scenario_from_json(R"({"kind": "one-sparse", "n": 10})").kind ==
        ScenarioKind::OneSparse);

  const auto ex = scenario_from_json(R"({"kind": "explicit", "means": [0.5, 0.1, 0.2]})");
  CHECK(ex.explicit_means.size() == 3);
  CHECK(ex.n == 3);
}

TEST_CASE("algorithm JSON round trip") {
  const auto spec = algorithm_from_json(R"({"kind": "lil_ucb_heuristic", "nu": 0.1, "ls": false})");
  CHECK(spec.kind == AlgorithmKind::LilUcbHeuristic);
  CHECK(spec.nu == 0.1);
  CHECK_FALSE(spec.ls_enabled);

  const auto with_overrides =
      algorithm_from_json(R"({"kind": "lil_ucb_theory", "nu": 0.05, "ls": true, "eps": 0.02})");
  CHECK(with_overrides.ls_enabled);
  REQUIRE(with_overrides.eps.has_value());
  CHECK(*with_overrides.eps == 0.02);

  const auto back = algorithm_from_json(algorithm_to_json(with_overrides));
  CHECK(back.kind == with_overrides.kind);
  CHECK(back.eps == with_overrides.eps);
  CHECK_THROWS(algorithm_from_json(R"({"kind": "prism"})"));
}

TEST_CASE("config JSON round trip") {
  ExperimentConfig cfg;
  cfg.scenarios = {ScenarioSpec{ScenarioKind::OneSparse, 10, 0.3, {}, 0.5}};
  AlgorithmSpec algo;
  algo.kind = AlgorithmKind::SuccessiveElim;
  cfg.algorithms = {algo};
  cfg.trials = 7;
  cfg.nu = 0.2;
  cfg.master_seed = 99;
  cfg.max_pulls = 1234;
  cfg.checkpoints = {10, 20, 40};
  cfg.workers = 3;

  const auto back = config_from_json(config_to_json(cfg));
  CHECK(back.scenarios.size() == 1);
  CHECK(back.algorithms.size() == 1);
  CHECK(back.trials == 7);
  CHECK(back.nu == 0.2);
  CHECK(back.master_seed == 99);
  CHECK(back.max_pulls == 1234);
  CHECK(back.checkpoints == cfg.checkpoints);
  CHECK(back.workers == 3);
}

TEST_CASE("config-level nu is the default for algorithms that omit it") {
  const auto cfg = config_from_json(
      R"({"nu": 0.25, "scenarios": [{"kind": "one_sparse", "n": 4}],
          "algorithms": [{"kind": "ucb1", "ls": true}, {"kind": "nonadaptive", "nu": 0.5, "ls": true}]})");
  CHECK(cfg.algorithms[0].nu == 0.25);
  CHECK(cfg.algorithms[1].nu == 0.5);
}

TEST_CASE("CSV headers are pinned") {
  ExperimentConfig cfg;
  cfg.scenarios = {ScenarioSpec{ScenarioKind::OneSparse, 3, 0.3, {}, 0.5}};
  AlgorithmSpec algo;
  algo.kind = AlgorithmKind::LilUcbHeuristic;
  cfg.algorithms = {algo};
  cfg.trials = 2;
  cfg.max_pulls = 2000;

  const auto table = run_stopping_time_experiment(cfg);
  std::ostringstream trials, aggregates;
  write_trials_csv(trials, cfg, table);
  write_aggregates_csv(aggregates, cfg, table);
  CHECK(trials.str().rfind(
            "scenario,n,algorithm,trial,seed,total_pulls,stopped,recommended,correct,wall_ms\n",
            0) == 0);
  CHECK(trials.str().find("one_sparse,3,lil_ucb_heuristic,0,") != std::string::npos);
  CHECK(aggregates.str().rfind("scenario,n,algorithm,trials,stopped_trials,error_rate,", 0) == 0);

  cfg.checkpoints = {3, 50};
  const auto anytime = run_anytime_experiment(cfg);
  std::ostringstream curve;
  write_anytime_csv(curve, cfg, anytime);
  CHECK(curve.str().rfind("scenario,n,algorithm,checkpoint,error_rate,trials\n", 0) == 0);
}

TEST_CASE("wall_ms column stays zero unless timing is requested") {
  ExperimentConfig cfg;
  cfg.scenarios = {ScenarioSpec{ScenarioKind::OneSparse, 3, 0.3, {}, 0.5}};
  AlgorithmSpec algo;
  algo.kind = AlgorithmKind::LilUcbHeuristic;
  cfg.algorithms = {algo};
  cfg.trials = 1;
  cfg.max_pulls = 2000;
  const auto table = run_stopping_time_experiment(cfg);

  std::ostringstream plain;
  write_trials_csv(plain, cfg, table);
  CHECK(plain.str().find(",0.000\n") != std::string::npos);

  cfg.record_timing = true;
  std::ostringstream timed;
  write_trials_csv(timed, cfg, table);
  CHECK(timed.str().find(",0.000\n") == std::string::npos);
}

TEST_CASE("run metadata carries resolved presets") {
  ExperimentConfig cfg;
  cfg.scenarios = {ScenarioSpec{ScenarioKind::OneSparse, 10, 0.3, {}, 0.5}};
  AlgorithmSpec algo;
  algo.kind = AlgorithmKind::LilUcbHeuristic;
  cfg.algorithms = {algo};
  const auto meta = run_metadata_json(cfg, "run-stopping");
  CHECK(meta.find("\"delta\": 0.02") != std::string::npos);  // nu/5 at nu=0.1
  CHECK(meta.find("\"version\"") != std::string::npos);
  CHECK(meta.find("\"h1\": 36.0") != std::string::npos);
  CHECK(meta.find("\"master_seed\"") != std::string::npos);
}

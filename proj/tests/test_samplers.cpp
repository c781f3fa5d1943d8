#include <doctest.h>

#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include "bestarm/bandit.hpp"
#include "bestarm/samplers.hpp"

using namespace bestarm;

namespace {

struct Drive {
  std::vector<int> pulls;
  Status final_status;
  std::int64_t total = 0;
};

Drive drive(Sampler& sampler, const BanditInstance& inst, Rng& rng, std::int64_t cap) {
  Drive d;
  while (!sampler.status().stopped && d.total < cap) {
    const int arm = sampler.next_arm();
    sampler.update(arm, sample_arm(inst, arm, rng));
    d.pulls.push_back(arm);
    ++d.total;
  }
  d.final_status = sampler.status();
  return d;
}

SampleStats stats_of(std::vector<std::int64_t> pulls, std::vector<double> sums) {
  return SampleStats(std::move(pulls), std::move(sums));
}

AlgorithmSpec spec_of(AlgorithmKind kind, double nu = 0.1, bool ls = false) {
  AlgorithmSpec s;
  s.kind = kind;
  s.nu = nu;
  s.ls_enabled = ls;
  return s;
}

}  // namespace

TEST_CASE("presets resolve to the documented parameters") {
  const auto heuristic = resolve_algorithm(spec_of(AlgorithmKind::LilUcbHeuristic), 2, 0.5);
  CHECK(heuristic.a == doctest::Approx(6.0));
  CHECK(heuristic.delta == doctest::Approx(0.02));
  CHECK(heuristic.eps == 0.0);
  CHECK(heuristic.beta == 0.5);

  const auto theory = resolve_algorithm(spec_of(AlgorithmKind::LilUcbTheory), 10, 0.5);
  CHECK(theory.a == doctest::Approx(9.0));
  CHECK(theory.beta == 1.0);
  CHECK(theory.eps == doctest::Approx(0.01));
  CHECK(theory.delta == doctest::Approx(1.09008244273718113e-4).epsilon(1e-10));
  CHECK(theory.ls_delta == 0.0);

  const auto theory_ls = resolve_algorithm(spec_of(AlgorithmKind::LilUcbTheory, 0.1, true), 10, 0.5);
  CHECK(theory_ls.delta == doctest::Approx(map_confidence_theory(0.05, 0.01)).epsilon(1e-12));
  CHECK(theory_ls.ls_delta == doctest::Approx(0.05));

  // the rule always receives the nu/2 half of the budget; for ucb1 and
  // nonadaptive the algorithm half is unused
  const auto nonadaptive = resolve_algorithm(spec_of(AlgorithmKind::Nonadaptive, 0.1, true), 5, 0.5);
  CHECK(nonadaptive.ls_delta == doctest::Approx(0.05));
  const auto ucb1 = resolve_algorithm(spec_of(AlgorithmKind::Ucb1, 0.1, true), 5, 0.5);
  CHECK(ucb1.ls_delta == doctest::Approx(0.05));

  const auto se = resolve_algorithm(spec_of(AlgorithmKind::SuccessiveElim), 5, 0.5);
  CHECK(se.delta == doctest::Approx(0.1));
  const auto eg = resolve_algorithm(spec_of(AlgorithmKind::ExpGapElim, 0.1, true), 5, 0.5);
  CHECK(eg.delta == doctest::Approx(0.05));
  CHECK(eg.ls_delta == doctest::Approx(0.05));

  CHECK_THROWS_AS(resolve_algorithm(spec_of(AlgorithmKind::LilUcbHeuristic, 0.1, true), 5, 0.5),
                  std::invalid_argument);
  CHECK_THROWS_AS(resolve_algorithm(spec_of(AlgorithmKind::LilUcbHeuristic, 1.5), 5, 0.5),
                  std::invalid_argument);
  auto bad = spec_of(AlgorithmKind::Ucb1);
  bad.beta = 2.0;
  CHECK_THROWS_AS(resolve_algorithm(bad, 5, 0.5), std::invalid_argument);
}

TEST_CASE("algorithm labels") {
  CHECK(algorithm_label(spec_of(AlgorithmKind::LilUcbHeuristic)) == "lil_ucb_heuristic");
  CHECK(algorithm_label(spec_of(AlgorithmKind::Nonadaptive, 0.1, true)) == "nonadaptive+ls");
  CHECK(parse_algorithm_kind("exp_gap_elim") == AlgorithmKind::ExpGapElim);
  CHECK_FALSE(parse_algorithm_kind("no_such_thing").has_value());
}

TEST_CASE("lil'UCB pulls every arm once, in index order") {
  for (auto kind : {AlgorithmKind::LilUcbHeuristic, AlgorithmKind::LilUcbTheory}) {
    const auto inst = make_scenario({ScenarioKind::OneSparse, 6, 0.3, {}, 0.5});
    Rng rng(5);
    auto sampler = make_sampler(spec_of(kind), inst.num_arms(), 0.5, rng);
    for (int i = 0; i < inst.num_arms(); ++i) {
      const int arm = sampler->next_arm();
      CHECK(arm == i);
      sampler->update(arm, sample_arm(inst, arm, rng));
      CHECK_FALSE(sampler->status().stopped);  // the count rule waits for the sweep
    }
  }
}

TEST_CASE("lil'UCB selection: equal radii favor the higher mean, ties the lower index") {
  const auto params = resolve_algorithm(spec_of(AlgorithmKind::LilUcbHeuristic), 2, 0.5);
  LilUcbSampler sampler(2, params);
  sampler.update(0, 0.3);
  sampler.update(1, 0.7);
  CHECK(sampler.next_arm() == 1);

  LilUcbSampler tied(2, params);
  tied.update(0, 0.4);
  tied.update(1, 0.4);
  CHECK(tied.next_arm() == 0);
}

TEST_CASE("lil'UCB index values match a direct evaluation") {
  // empirical state (mean, pulls) = (0.9, 100), (0.5, 1), (0.4, 1) under the
  // heuristic preset: the fresh arms still dominate
  UcbParams p{LilParams{0.0, 0.02, 0.5, BoundVariant::PlusTwo}, 0.5, 6.0};
  CHECK(ucb_index(0.9, 100, p) == doctest::Approx(1.14746575895338).epsilon(1e-12));
  CHECK(ucb_index(0.5, 1, p) == doctest::Approx(2.62292950593642).epsilon(1e-12));
  CHECK(ucb_index(0.4, 1, p) == doctest::Approx(2.52292950593642).epsilon(1e-12));
}

TEST_CASE("lil'UCB selection agrees with a brute-force index scan at every step") {
  const auto inst = make_scenario({ScenarioKind::Alpha, 8, 0.3, {}, 0.5});
  const int n = inst.num_arms();
  const auto params = resolve_algorithm(spec_of(AlgorithmKind::LilUcbHeuristic), n, 0.5);
  const UcbParams ucb{LilParams{params.eps, params.delta, params.sigma, params.variant},
                      params.beta, params.a};
  Rng rng(321);
  LilUcbSampler sampler(n, params);
  for (int i = 0; i < n; ++i) sampler.update(i, sample_arm(inst, i, rng));
  for (int step = 0; step < 3000 && !sampler.status().stopped; ++step) {
    const int chosen = sampler.next_arm();
    int brute = 0;
    double best = -1e300;
    for (int i = 0; i < n; ++i) {
      const double idx = ucb_index(sampler.stats().mean(i), sampler.stats().pulls(i), ucb);
      if (idx > best) {
        best = idx;
        brute = i;
      }
    }
    REQUIRE(chosen == brute);
    sampler.update(chosen, sample_arm(inst, chosen, rng));
  }
}

TEST_CASE("count-based stop rule") {
  const auto stopped = lil_ucb_should_stop(stats_of({46, 5}, {23.0, 1.0}), 9.0);
  REQUIRE(stopped.has_value());
  CHECK(*stopped == 0);
  CHECK_FALSE(lil_ucb_should_stop(stats_of({45, 5}, {22.0, 1.0}), 9.0).has_value());
  CHECK_FALSE(lil_ucb_should_stop(stats_of({1, 1, 1, 1}, {0, 0, 0, 0}), 1.0).has_value());
}

TEST_CASE("at most one arm can satisfy the count rule when a >= 1") {
  for (int n = 2; n <= 4; ++n) {
    std::vector<std::int64_t> counts(static_cast<std::size_t>(n), 0);
    const std::int64_t cap = 30;
    // enumerate all count vectors with sum <= cap
    auto recurse = [&](auto&& self, int arm, std::int64_t remaining) -> void {
      if (arm == n) {
        std::int64_t total = 0;
        for (auto c : counts) total += c;
        for (double a : {1.0, 1.5, 9.0}) {
          int satisfied = 0;
          for (int i = 0; i < n; ++i) {
            if (static_cast<double>(counts[static_cast<std::size_t>(i)]) >=
                1.0 + a * static_cast<double>(total - counts[static_cast<std::size_t>(i)]))
              ++satisfied;
          }
          REQUIRE(satisfied <= 1);
        }
        return;
      }
      for (std::int64_t c = 0; c <= remaining; ++c) {
        counts[static_cast<std::size_t>(arm)] = c;
        self(self, arm + 1, remaining - c);
      }
    };
    recurse(recurse, 0, cap);
  }
}

TEST_CASE("lil'UCB heuristic stops on an easy two-arm instance") {
  const auto inst = make_scenario({ScenarioKind::Explicit, 0, 0.3, {1.0, 0.0}, 1e-6});
  Rng rng(11);
  auto sampler = make_sampler(spec_of(AlgorithmKind::LilUcbHeuristic), 2, 1e-6, rng);
  const auto d = drive(*sampler, inst, rng, 1000);
  CHECK(d.final_status.stopped);
  CHECK(d.final_status.recommended == 0);
  CHECK(d.total <= 200);
}

TEST_CASE("ls_should_stop examples") {
  const LilParams p{0.01, 0.05, 0.5, BoundVariant::PlusTwo};
  const auto sure = ls_should_stop(stats_of({1'000'000, 1'000'000}, {1'000'000.0, 0.0}), p, 2);
  REQUIRE(sure.has_value());
  CHECK(*sure == 0);
  CHECK_FALSE(ls_should_stop(stats_of({50, 50}, {25.0, 25.0}), p, 2).has_value());
  CHECK_FALSE(ls_should_stop(stats_of({1, 1}, {0.6, 0.0}), p, 2).has_value());
  CHECK_FALSE(ls_should_stop(stats_of({0, 3}, {0.0, 1.0}), p, 2).has_value());
}

TEST_CASE("incremental LS rule equals the full scan on random streams") {
  for (std::uint64_t seed : {1ULL, 2ULL, 3ULL}) {
    Rng rng(seed);
    const int n = 5;
    const LilParams p{0.01, 0.2, 0.5, BoundVariant::PlusTwo};
    SampleStats stats(n);
    LsRule rule(n, p);
    for (int step = 0; step < 4000; ++step) {
      const int arm = static_cast<int>(rng.below(n));
      // drift arm 0 upward so the rule eventually fires
      const double reward = rng.gaussian(arm == 0 ? 0.8 : 0.0, 0.5);
      stats.record(arm, reward);
      rule.update(arm, stats.mean(arm), stats.pulls(arm));
      const auto expected = ls_should_stop(stats, p, n);
      const auto got = rule.check();
      REQUIRE(got.has_value() == expected.has_value());
      if (expected) REQUIRE(*got == *expected);
    }
  }
}

TEST_CASE("ucb1 selection") {
  const auto params = resolve_algorithm(spec_of(AlgorithmKind::Ucb1), 2, 0.5);
  Ucb1Sampler sampler(2, params);
  sampler.update(0, 0.3);
  sampler.update(1, 0.1);
  CHECK(sampler.next_arm() == 0);  // equal bonuses at t=2

  // sigma = 0.5 reproduces the plain sqrt(2 log t / T) index
  const double idx_worse = 0.9 + std::sqrt(2.0 * std::log(101.0) / 100.0);
  const double idx_fresh = 0.5 + std::sqrt(2.0 * std::log(101.0) / 1.0);
  CHECK(idx_worse == doctest::Approx(1.20381311745352).epsilon(1e-12));
  CHECK(idx_fresh == doctest::Approx(3.53813117453518).epsilon(1e-12));
  CHECK(idx_fresh > idx_worse);  // the fresh arm wins at t=101
}

TEST_CASE("ucb1 with LS stops on an easy instance") {
  const auto inst = make_scenario({ScenarioKind::Explicit, 0, 0.3, {1.0, 0.0}, 0.5});
  Rng rng(17);
  auto sampler = make_sampler(spec_of(AlgorithmKind::Ucb1, 0.1, true), 2, 0.5, rng);
  const auto d = drive(*sampler, inst, rng, 20000);
  CHECK(d.final_status.stopped);
  CHECK(d.final_status.recommended == 0);
}

TEST_CASE("nonadaptive cycles a fixed permutation") {
  const auto params = resolve_algorithm(spec_of(AlgorithmKind::Nonadaptive), 3, 0.5);
  Rng rng_a(77), rng_b(77);
  NonadaptiveSampler a(3, params, rng_a);
  NonadaptiveSampler b(3, params, rng_b);
  CHECK(a.permutation() == b.permutation());

  const auto perm = a.permutation();
  for (int cycle = 0; cycle < 4; ++cycle) {
    for (int i = 0; i < 3; ++i) {
      const int arm = a.next_arm();
      CHECK(arm == perm[static_cast<std::size_t>(i)]);
      a.update(arm, 0.0);
    }
  }
  for (int i = 0; i < 3; ++i) CHECK(a.stats().pulls(i) == 4);  // balanced after k cycles
}

TEST_CASE("anytime recommendation") {
  CHECK(anytime_recommendation(stats_of({1, 2, 2}, {0.2, 1.4, 1.4})) == 1);
  CHECK(anytime_recommendation(stats_of({1, 1}, {1.0, -0.3})) == 0);
  CHECK_THROWS_AS(anytime_recommendation(stats_of({1, 0}, {1.0, 0.0})), std::logic_error);
}

TEST_CASE("identical (spec, instance, seed) gives identical traces") {
  const auto inst = make_scenario({ScenarioKind::OneSparse, 5, 0.3, {}, 0.5});
  for (auto kind : {AlgorithmKind::LilUcbHeuristic, AlgorithmKind::LilUcbTheory,
                    AlgorithmKind::Ucb1, AlgorithmKind::SuccessiveElim,
                    AlgorithmKind::ExpGapElim, AlgorithmKind::Nonadaptive}) {
    const bool ls = kind == AlgorithmKind::Ucb1 || kind == AlgorithmKind::Nonadaptive ||
                    kind == AlgorithmKind::ExpGapElim;
    const auto spec = spec_of(kind, 0.1, ls);
    Rng rng1(99), rng2(99);
    auto s1 = make_sampler(spec, inst.num_arms(), 0.5, rng1);
    auto s2 = make_sampler(spec, inst.num_arms(), 0.5, rng2);
    const auto d1 = drive(*s1, inst, rng1, 20000);
    const auto d2 = drive(*s2, inst, rng2, 20000);
    CHECK(d1.pulls == d2.pulls);
    CHECK(d1.final_status.stopped == d2.final_status.stopped);
    CHECK(d1.final_status.recommended == d2.final_status.recommended);
  }
}

TEST_CASE("pull counts are conserved for every algorithm") {
  const auto inst = make_scenario({ScenarioKind::Alpha, 4, 0.6, {}, 0.5});
  for (auto kind : {AlgorithmKind::LilUcbHeuristic, AlgorithmKind::Ucb1,
                    AlgorithmKind::SuccessiveElim, AlgorithmKind::ExpGapElim,
                    AlgorithmKind::Nonadaptive}) {
    Rng rng(3);
    auto sampler =
        make_sampler(spec_of(kind, 0.1, kind == AlgorithmKind::Ucb1), inst.num_arms(), 0.5, rng);
    std::int64_t updates = 0;
    while (!sampler->status().stopped && updates < 5000) {
      const int arm = sampler->next_arm();
      sampler->update(arm, sample_arm(inst, arm, rng));
      ++updates;
      std::int64_t total = 0;
      for (int i = 0; i < inst.num_arms(); ++i) total += sampler->stats().pulls(i);
      REQUIRE(total == updates);
      REQUIRE(sampler->stats().total_pulls() == updates);
    }
  }
}

TEST_CASE("contract violations throw") {
  const auto inst = make_scenario({ScenarioKind::Explicit, 0, 0.3, {1.0, 0.0}, 1e-9});
  Rng rng(1);
  auto sampler = make_sampler(spec_of(AlgorithmKind::LilUcbHeuristic), 2, 1e-9, rng);
  const int arm = sampler->next_arm();
  CHECK_THROWS_AS(sampler->update(1 - arm, 0.0), std::logic_error);
  sampler->update(arm, sample_arm(inst, arm, rng));
  drive(*sampler, inst, rng, 1000);
  REQUIRE(sampler->status().stopped);
  CHECK_THROWS_AS(sampler->next_arm(), std::logic_error);
  CHECK_THROWS_AS(sampler->update(0, 0.0), std::logic_error);
}

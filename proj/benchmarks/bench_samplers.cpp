#include <benchmark/benchmark.h>

#include <vector>

#include "bestarm/bandit.hpp"
#include "bestarm/elimination.hpp"
#include "bestarm/samplers.hpp"

namespace {

using namespace bestarm;

// ordered-set argmax maintenance vs a full scan per update
void BM_ArgmaxSetUpdate(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  Rng rng(1);
  std::vector<double> values(static_cast<std::size_t>(n));
  for (auto& v : values) v = rng.uniform();
  ArgmaxSet set(values);
  for (auto _ : state) {
    const int arm = static_cast<int>(rng.below(static_cast<std::uint64_t>(n)));
    set.update(arm, rng.uniform());
    benchmark::DoNotOptimize(set.top());
  }
  state.SetComplexityN(n);
}
BENCHMARK(BM_ArgmaxSetUpdate)->RangeMultiplier(8)->Range(16, 16 << 9)->Complexity();

void BM_BruteArgmax(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  Rng rng(1);
  std::vector<double> values(static_cast<std::size_t>(n));
  for (auto& v : values) v = rng.uniform();
  for (auto _ : state) {
    const int arm = static_cast<int>(rng.below(static_cast<std::uint64_t>(n)));
    values[static_cast<std::size_t>(arm)] = rng.uniform();
    int best = 0;
    for (int i = 1; i < n; ++i)
      if (values[static_cast<std::size_t>(i)] > values[static_cast<std::size_t>(best)]) best = i;
    benchmark::DoNotOptimize(best);
  }
  state.SetComplexityN(n);
}
BENCHMARK(BM_BruteArgmax)->RangeMultiplier(8)->Range(16, 16 << 9)->Complexity();

// full per-pull cost of the UCB sampler, index maintenance included
void BM_LilUcbStep(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto inst = make_scenario({ScenarioKind::OneSparse, n, 0.3, {}, 0.5});
  AlgorithmSpec spec;
  spec.kind = AlgorithmKind::LilUcbHeuristic;
  spec.a = 1e18;  // keep it running for the duration of the benchmark
  Rng rng(2);
  auto sampler = make_sampler(spec, n, 0.5, rng);
  for (int i = 0; i < n; ++i) sampler->update(i, sample_arm(inst, i, rng));
  for (auto _ : state) {
    const int arm = sampler->next_arm();
    sampler->update(arm, sample_arm(inst, arm, rng));
  }
  state.SetComplexityN(n);
}
BENCHMARK(BM_LilUcbStep)->RangeMultiplier(10)->Range(10, 10000)->Complexity();

void BM_Ucb1Step(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto inst = make_scenario({ScenarioKind::OneSparse, n, 0.3, {}, 0.5});
  AlgorithmSpec spec;
  spec.kind = AlgorithmKind::Ucb1;
  Rng rng(3);
  auto sampler = make_sampler(spec, n, 0.5, rng);
  for (int i = 0; i < n; ++i) sampler->update(i, sample_arm(inst, i, rng));
  for (auto _ : state) {
    const int arm = sampler->next_arm();
    sampler->update(arm, sample_arm(inst, arm, rng));
  }
  state.SetComplexityN(n);
}
BENCHMARK(BM_Ucb1Step)->RangeMultiplier(10)->Range(10, 10000)->Complexity();

void BM_GaussianDraw(benchmark::State& state) {
  Rng rng(4);
  for (auto _ : state) benchmark::DoNotOptimize(rng.gaussian());
}
BENCHMARK(BM_GaussianDraw);

void BM_LilRadius(benchmark::State& state) {
  const LilParams p{0.01, 0.05, 0.5, BoundVariant::PlusTwo};
  std::int64_t t = 1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(lil_radius(t, p));
    t = t % 1'000'000 + 1;
  }
}
BENCHMARK(BM_LilRadius);

}  // namespace

BENCHMARK_MAIN();

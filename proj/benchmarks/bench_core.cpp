#include <benchmark/benchmark.h>

#include "rmtl/brownian.hpp"
#include "rmtl/design.hpp"
#include "rmtl/inference.hpp"
#include "rmtl/simulate.hpp"

namespace {

rmtl::ScenarioSpec bench_spec(int n) {
  rmtl::ScenarioSpec spec;
  spec.label = "bench";
  for (int k = 0; k < 2; ++k) {
    const double p = k == 0 ? 0.7 : 0.8;
    spec.groups[k] = {k == 0 ? "a" : "b", rmtl::PiecewiseWeibullCif(p, {{0.0, 3.0, 2.0}}),
                      rmtl::PiecewiseWeibullCif(1.0 - p, {{0.0, 2.0, 3.0}}), n};
  }
  return spec;
}

rmtl::TwoGroupSample bench_sample(int n) {
  const auto spec = bench_spec(n);
  rmtl::RandomStream rng(1, 0);
  return rmtl::simulate_dataset(spec, rmtl::resolve_censoring(spec), rng);
}

void BM_FitGroups(benchmark::State& state) {
  const auto s = bench_sample(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(rmtl::fit_groups(s));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_FitGroups)->RangeMultiplier(4)->Range(64, 16384)->Complexity();

void BM_DiffTest(benchmark::State& state) {
  const auto fit = rmtl::fit_groups(bench_sample(static_cast<int>(state.range(0))));
  const double tau = rmtl::default_tau(fit);
  for (auto _ : state) benchmark::DoNotOptimize(rmtl::diff_test(fit, tau, 0.05));
}
BENCHMARK(BM_DiffTest)->Arg(100)->Arg(1000);

void BM_SdiffTest(benchmark::State& state) {
  const auto fit = rmtl::fit_groups(bench_sample(static_cast<int>(state.range(0))));
  const double tau = rmtl::default_tau(fit);
  for (auto _ : state) benchmark::DoNotOptimize(rmtl::sdiff_test(fit, tau, 0.05));
}
BENCHMARK(BM_SdiffTest)->Arg(100)->Arg(1000);

void BM_SupAbsBmSf(benchmark::State& state) {
  double x = 0.5;
  for (auto _ : state) {
    benchmark::DoNotOptimize(rmtl::sup_abs_bm_sf(x));
    x = x > 4.0 ? 0.5 : x + 0.01;
  }
}
BENCHMARK(BM_SupAbsBmSf);

void BM_SampleSizeSdiff(benchmark::State& state) {
  rmtl::DesignInput in;
  in.delta = 0.2;
  in.var1 = 0.6;
  in.var2 = 0.7;
  for (auto _ : state) benchmark::DoNotOptimize(rmtl::sample_size_sdiff(in));
}
BENCHMARK(BM_SampleSizeSdiff);

void BM_Replication(benchmark::State& state) {
  const auto spec = bench_spec(static_cast<int>(state.range(0)));
  rmtl::SimulationOptions opt;
  opt.reps = 1;
  for (auto _ : state) benchmark::DoNotOptimize(rmtl::run_monte_carlo(spec, opt));
}
BENCHMARK(BM_Replication)->Arg(50)->Arg(500);

}  // namespace

BENCHMARK_MAIN();

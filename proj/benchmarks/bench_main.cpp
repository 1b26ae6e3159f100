#include <benchmark/benchmark.h>

#include "pendular/dipole_pair.hpp"
#include "pendular/entanglement.hpp"
#include "pendular/fitting.hpp"
#include "pendular/pendular_core.hpp"

using namespace pendular;

static void BM_SolvePendular(benchmark::State& state) {
  const ReducedField x{static_cast<double>(state.range(0))};
  for (auto _ : state) benchmark::DoNotOptimize(solve_pendular(x));
}
BENCHMARK(BM_SolvePendular)->Arg(1)->Arg(8)->Arg(40);

static void BM_DiagonalizePair(benchmark::State& state) {
  const auto cfg = PairConfig{ReducedField{2.0}, ReducedField{2.2}, 0.1};
  const auto sites = PairSites::solve(cfg);
  for (auto _ : state) benchmark::DoNotOptimize(diagonalize_pair(sites, cfg.effective_coupling(), false));
}
BENCHMARK(BM_DiagonalizePair);

static void BM_ThermalConcurrence(benchmark::State& state) {
  const auto sites = PairSites::solve(PairConfig::symmetric(3.0, 1.0));
  const ReducedTemperature z{0.3};
  for (auto _ : state) {
    benchmark::DoNotOptimize(concurrence(thermal_density_matrix(diagonalize_pair(sites, 1.0, true), z)));
  }
}
BENCHMARK(BM_ThermalConcurrence);

static void BM_CriticalCoupling(benchmark::State& state) {
  const auto site = site_properties(ReducedField{1.0});
  for (auto _ : state) benchmark::DoNotOptimize(critical_coupling(site, ReducedTemperature{0.3}));
}
BENCHMARK(BM_CriticalCoupling);

static void BM_LevenbergMarquardt(benchmark::State& state) {
  const auto model = ModelFamily::C1DoubleSigmoid;
  const auto data = exact_curve(model, uniform_grid(0.0, kFitGridMax, kFitGridPoints));
  const auto start = default_initial_guess(model);
  for (auto _ : state) benchmark::DoNotOptimize(levenberg_marquardt(data, model, start));
}
BENCHMARK(BM_LevenbergMarquardt);
BENCHMARK_MAIN();

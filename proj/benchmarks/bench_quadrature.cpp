#include <benchmark/benchmark.h>

#include "nonlocal/localization.hpp"
#include "nonlocal/nonlocal_quadrature.hpp"
#include "nonlocal/spectrum.hpp"

using namespace nonlocal;

static void BM_PsiLocal(benchmark::State& state) {
  const auto u = catalog("gaussian", static_cast<int>(state.range(0)));
  const auto g = OrliczFunction::power_log(2, 1);
  for (auto _ : state) benchmark::DoNotOptimize(psi_local(u, {0.3, 0.1, 0.0}, 0.5, g, 0.1).value);
}
BENCHMARK(BM_PsiLocal)->Arg(1)->Arg(2)->Arg(3);

static void BM_PsiTotal1D(benchmark::State& state) {
  const auto u = catalog("tent", 1);
  const auto g = OrliczFunction::power(2);
  for (auto _ : state) benchmark::DoNotOptimize(psi_total(u, 0.5, g, 0.1).total);
}
BENCHMARK(BM_PsiTotal1D)->Unit(benchmark::kMillisecond);

static void BM_PhiNumeric(benchmark::State& state) {
  const auto g = OrliczFunction::max_power(1.5, 3);
  for (auto _ : state) benchmark::DoNotOptimize(phi_numeric(2.0, 0.5, 0.3, g, static_cast<int>(state.range(0))));
}
BENCHMARK(BM_PhiNumeric)->Arg(2)->Arg(3);

static void BM_MainTheoremPower(benchmark::State& state) {
  const auto u = catalog("gaussian", 1);
  for (auto _ : state) benchmark::DoNotOptimize(verify_main_theorem(u, OrliczFunction::power(2), 0.5, {}).fitted_limit);
}
BENCHMARK(BM_MainTheoremPower)->Unit(benchmark::kMillisecond)->Iterations(1);

static void BM_DiscreteEnergy(benchmark::State& state) {
  const Grid1D grid(static_cast<int>(state.range(0)), 8);
  std::vector<double> u(grid.M, 0.5);
  const auto g = OrliczFunction::power_log(2, 1);
  for (auto _ : state) benchmark::DoNotOptimize(discrete_energy(u, grid, g, 0.5));
}
BENCHMARK(BM_DiscreteEnergy)->Arg(63)->Arg(255);

static void BM_RayleighMinimize(benchmark::State& state) {
  const Grid1D grid = Grid1D::snapped(0.05, 8);
  const auto g = OrliczFunction::power(2);
  for (auto _ : state) benchmark::DoNotOptimize(rayleigh_minimize(grid, g, 0.5, 1.0, 1).lambda1);
}
BENCHMARK(BM_RayleighMinimize)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();

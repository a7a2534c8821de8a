// Threaded fast-path kernels vs the dense serial reference on perturbed symplectic fields.

#include <benchmark/benchmark.h>

#include "gcy/fixtures.hpp"
#include "gcy/variational.hpp"

using namespace gcy;

namespace {

GridForm field(int n) {
  const TorusGrid g(6, n, 1);
  return GridForm::constant(g, symplectic_rho()) + random_exact_perturbation(g, Parity::Even, 0.05, 3);
}

Kernel kernel_of(const benchmark::State& s) { return s.range(1) ? Kernel::Omp : Kernel::Serial; }

void BM_HatField(benchmark::State& state) {
  const GridForm rho = field(static_cast<int>(state.range(0)));
  const Kernel k = kernel_of(state);
  for (auto _ : state) benchmark::DoNotOptimize(hat_field(rho, k));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(rho.grid().num_points()));
}

void BM_ApplyJ(benchmark::State& state) {
  const GridForm rho = field(static_cast<int>(state.range(0)));
  const GridForm w = random_exact_perturbation(rho.grid(), Parity::Even, 1.0, 4);
  const Kernel k = kernel_of(state);
  for (auto _ : state) benchmark::DoNotOptimize(apply_j(rho, w, k));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(rho.grid().num_points()));
}

void BM_Volume(benchmark::State& state) {
  const GridForm rho = field(static_cast<int>(state.range(0)));
  const Kernel k = kernel_of(state);
  for (auto _ : state) benchmark::DoNotOptimize(volume_functional(rho, k));
}

}  // namespace

// args: points per axis, threaded (1) or serial (0)
BENCHMARK(BM_HatField)->ArgsProduct({{4}, {0, 1}})->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_ApplyJ)->ArgsProduct({{4}, {0, 1}})->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_Volume)->ArgsProduct({{4}, {0, 1}})->Unit(benchmark::kMillisecond)->UseRealTime();

BENCHMARK_MAIN();

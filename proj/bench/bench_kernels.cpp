// Serial reference kernels against their OpenMP counterparts.
//
//   ./gmr_bench --benchmark_filter=Sup
//   OMP_NUM_THREADS=4 ./gmr_bench

#include <benchmark/benchmark.h>

#include <cmath>
#include <random>
#include <vector>

#include "gmr/kernels/kernels.hpp"

namespace {

using namespace gmr::kernels;

std::vector<double> random_values(std::size_t n, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<double> v(n);
  for (auto& x : v) x = u(rng);
  return v;
}

const StepIncrements kInc{0.3, 0.6, 0.09, 0.36};

template <bool Parallel>
void BM_ReduceSup(benchmark::State& state) {
  const auto parents = static_cast<std::size_t>(state.range(0));
  const auto children = random_values(4 * parents, 1);
  std::vector<double> out(parents);
  for (auto _ : state) {
    if constexpr (Parallel) {
      parallel::reduce_sup(children, out);
    } else {
      serial::reduce_sup(children, out);
    }
    benchmark::DoNotOptimize(out.data());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(children.size()));
}

template <bool Parallel>
void BM_ExtendLattice(benchmark::State& state) {
  const auto parents = static_cast<std::size_t>(state.range(0));
  const auto b = random_values(parents, 2);
  const auto qv = random_values(parents, 3);
  std::vector<double> bc(4 * parents);
  std::vector<double> qc(4 * parents);
  for (auto _ : state) {
    if constexpr (Parallel) {
      parallel::extend_lattice(b, qv, kInc, bc, qc);
    } else {
      serial::extend_lattice(b, qv, kInc, bc, qc);
    }
    benchmark::DoNotOptimize(bc.data());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(bc.size()));
}

template <bool Parallel>
void BM_EulerStep(benchmark::State& state) {
  const auto parents = static_cast<std::size_t>(state.range(0));
  const auto x = random_values(parents, 4);
  const auto u = random_values(parents, 5);
  std::vector<double> out(4 * parents);
  auto b = [](double v) { return 0.5 * (1.0 - v); };
  auto h = [](double) { return 0.1; };
  auto sigma = [](double v) { return std::min(1.0 + 0.5 * std::abs(v), 2.0); };
  for (auto _ : state) {
    if constexpr (Parallel) {
      parallel::euler_step(x, u, 0.1, kInc, b, h, sigma, out);
    } else {
      serial::euler_step(x, u, 0.1, kInc, b, h, sigma, out);
    }
    benchmark::DoNotOptimize(out.data());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(out.size()));
}

template <bool Parallel>
void BM_HeatStep(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto u = random_values(n, 6);
  std::vector<double> out(n);
  const HeatCoefficients c{0.125, 0.5};
  for (auto _ : state) {
    if constexpr (Parallel) {
      parallel::heat_step(u, out, c);
    } else {
      serial::heat_step(u, out, c);
    }
    benchmark::DoNotOptimize(out.data());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(n));
}

// Lattice levels 6..10 (parents at depth 5..9).
BENCHMARK(BM_ReduceSup<false>)->Name("ReduceSup/serial")->RangeMultiplier(4)->Range(1 << 10, 1 << 18);
BENCHMARK(BM_ReduceSup<true>)->Name("ReduceSup/parallel")->RangeMultiplier(4)->Range(1 << 10, 1 << 18);
BENCHMARK(BM_ExtendLattice<false>)->Name("ExtendLattice/serial")->RangeMultiplier(4)->Range(1 << 10, 1 << 18);
BENCHMARK(BM_ExtendLattice<true>)->Name("ExtendLattice/parallel")->RangeMultiplier(4)->Range(1 << 10, 1 << 18);
BENCHMARK(BM_EulerStep<false>)->Name("EulerStep/serial")->RangeMultiplier(4)->Range(1 << 10, 1 << 18);
BENCHMARK(BM_EulerStep<true>)->Name("EulerStep/parallel")->RangeMultiplier(4)->Range(1 << 10, 1 << 18);
// PDE grids from dx = 0.02 (a few hundred points) up to fine resolutions.
BENCHMARK(BM_HeatStep<false>)->Name("HeatStep/serial")->RangeMultiplier(8)->Range(1 << 9, 1 << 21);
BENCHMARK(BM_HeatStep<true>)->Name("HeatStep/parallel")->RangeMultiplier(8)->Range(1 << 9, 1 << 21);

}  // namespace

BENCHMARK_MAIN();

#include <benchmark/benchmark.h>

#include "isingfix/generators.hpp"
#include "isingfix/landscape.hpp"

using namespace isingfix;

namespace {

void BM_CsseLocalMinima(benchmark::State& state) {
  const auto inst = gen_csse(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(enumerate_k_minima(inst, 1).minima_count);
}

void BM_RandomKMinima(benchmark::State& state) {
  const auto inst = gen_random({18, 0.3}, 1);
  for (auto _ : state) benchmark::DoNotOptimize(enumerate_k_minima(inst, static_cast<int>(state.range(0))).minima_count);
}

void BM_Basins(benchmark::State& state) {
  const auto inst = gen_random({static_cast<int>(state.range(0)), 0.3}, 2);
  for (auto _ : state) benchmark::DoNotOptimize(k_basins(inst, 1).basin_count);
}

void BM_ColumnZeroEnergy(benchmark::State& state) {
  const auto ci = gen_column(2, 4, ColumnTargets::kZeros);
  for (auto _ : state) benchmark::DoNotOptimize(zero_energy_assignments(ci).size());
}

}  // namespace

BENCHMARK(BM_CsseLocalMinima)->Arg(12)->Arg(16)->Arg(20)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_RandomKMinima)->Arg(1)->Arg(2)->Arg(3)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Basins)->Arg(12)->Arg(16)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ColumnZeroEnergy)->Unit(benchmark::kMillisecond);

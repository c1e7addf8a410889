#include <benchmark/benchmark.h>

#include "isingfix/generators.hpp"
#include "isingfix/solver.hpp"

using namespace isingfix;

namespace {

void run_method(benchmark::State& state, const IsingInstance& inst, SolveMethod m) {
  SolveResult last;
  for (auto _ : state) {
    last = solve(inst, m);
    benchmark::DoNotOptimize(last.energy);
  }
  state.counters["leaves"] = static_cast<double>(last.leaves_explored);
  state.counters["outer"] = static_cast<double>(last.outer_assignments);
}

void BM_MulticopyBrute(benchmark::State& state) {
  run_method(state, gen_multicopy(static_cast<int>(state.range(0)), 4), SolveMethod::kBrute);
}
void BM_MulticopyColoring(benchmark::State& state) {
  run_method(state, gen_multicopy(static_cast<int>(state.range(0)), 4), SolveMethod::kColoring);
}
void BM_RandomEffective(benchmark::State& state) {
  run_method(state, gen_random({static_cast<int>(state.range(0)), 0.3}, 1), SolveMethod::kEffective);
}
void BM_RandomAvgDegree(benchmark::State& state) {
  run_method(state, gen_random({static_cast<int>(state.range(0)), 0.3}, 1), SolveMethod::kAvgDegree);
}
void BM_RandomCombined(benchmark::State& state) {
  run_method(state, gen_random({static_cast<int>(state.range(0)), 0.3}, 1), SolveMethod::kCombined);
}
void BM_DenseCombined(benchmark::State& state) {
  run_method(state, gen_random({static_cast<int>(state.range(0)), 0.8}, 2), SolveMethod::kCombined);
}

void BM_ComputeZ(benchmark::State& state) {
  const auto inst = gen_random_regular(static_cast<int>(state.range(0)), 4, 3);
  const auto T = largest_color_class(degree_graph(inst));
  for (auto _ : state) benchmark::DoNotOptimize(compute_Z(inst, T));
}

}  // namespace

BENCHMARK(BM_MulticopyBrute)->Arg(3)->Arg(4)->Arg(5)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_MulticopyColoring)->Arg(3)->Arg(4)->Arg(5)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_RandomEffective)->Arg(14)->Arg(18)->Arg(22)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_RandomAvgDegree)->Arg(14)->Arg(18)->Arg(22)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_RandomCombined)->Arg(14)->Arg(18)->Arg(22)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_DenseCombined)->Arg(14)->Arg(18)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ComputeZ)->Arg(16)->Arg(20)->Arg(24)->Unit(benchmark::kMillisecond);

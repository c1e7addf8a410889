#include <benchmark/benchmark.h>

#include <vector>

#include "isingfix/probe.hpp"

using namespace isingfix;

namespace {

void BM_MaxInterval(benchmark::State& state) {
  const WeightedSum w(std::vector<std::int64_t>(static_cast<std::size_t>(state.range(0)), 1));
  for (auto _ : state) benchmark::DoNotOptimize(max_interval_prob(w, 1).h);
}

void BM_MonteCarlo(benchmark::State& state) {
  std::vector<std::int64_t> a;
  for (int i = 0; i < 64; ++i) a.push_back(1 + i % 5);
  const WeightedSum w(a);
  for (auto _ : state) {
    benchmark::DoNotOptimize(mc_interval_prob(w, 2, 0, 1 << 20, 1, static_cast<unsigned>(state.range(0))).hits);
  }
}

}  // namespace

BENCHMARK(BM_MaxInterval)->Arg(64)->Arg(256)->Arg(1024)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_MonteCarlo)->Arg(1)->Arg(4)->Unit(benchmark::kMillisecond);

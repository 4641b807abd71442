#include <benchmark/benchmark.h>

#include "snn/linalg.hpp"

static void BM_GaussLegendreNodes(benchmark::State& state) {
  const int q = static_cast<int>(state.range(0));
  for (auto _ : state) {
    auto rule = snn::gauss_legendre(q);
    benchmark::DoNotOptimize(rule);
  }
}
BENCHMARK(BM_GaussLegendreNodes)->Arg(4)->Arg(10)->Arg(32)->Arg(64);

static void BM_CompositeRule(benchmark::State& state) {
  const int subintervals = static_cast<int>(state.range(0));
  for (auto _ : state) {
    auto rule = snn::composite_rule(0.0, 2.0, subintervals, 10);
    benchmark::DoNotOptimize(rule);
  }
}
BENCHMARK(BM_CompositeRule)->Arg(30)->Arg(100)->Arg(1000);

static void BM_TensorRule(benchmark::State& state) {
  const int s = static_cast<int>(state.range(0));
  const auto r1 = snn::composite_rule(0.0, 1.0, s, 4);
  for (auto _ : state) {
    auto rule = snn::tensor_rule(r1, r1);
    benchmark::DoNotOptimize(rule);
  }
  state.SetItemsProcessed(state.iterations() * r1.size() * r1.size());
}
BENCHMARK(BM_TensorRule)->Arg(8)->Arg(32);

// Parallel sampling diagnostics against their serial reference twins.

#include <benchmark/benchmark.h>

#include "qvi/diagnostics.hpp"

using namespace qvi;

namespace {

template <auto Fn>
void lipschitz(benchmark::State& state) {
  const VIProblem p = make_example_5_1();
  for (auto _ : state) {
    benchmark::DoNotOptimize(Fn(p, state.range(0), 42, PairSamplingOptions{}));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

template <auto Fn>
void quasimonotonicity(benchmark::State& state) {
  const VIProblem p = make_example_5_3();
  for (auto _ : state) {
    benchmark::DoNotOptimize(Fn(p, state.range(0), 42, QuasimonotonicityOptions{}).violations);
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

template <auto Fn>
void minty(benchmark::State& state) {
  const VIProblem p = make_example_5_2(2, 3);
  const Vector candidate = Vector::Zero(p.dim());
  for (auto _ : state) {
    benchmark::DoNotOptimize(Fn(p, candidate, state.range(0), 42));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

}  // namespace

BENCHMARK(lipschitz<&estimate_lipschitz_constant>)->Name("lipschitz/parallel")->Arg(10000)->Arg(100000)->UseRealTime();
BENCHMARK(lipschitz<&reference::estimate_lipschitz_constant>)->Name("lipschitz/serial")->Arg(10000)->Arg(100000);
BENCHMARK(quasimonotonicity<&sampled_quasimonotonicity_check>)
    ->Name("quasimonotonicity/parallel")
    ->Arg(10000)
    ->Arg(100000)
    ->UseRealTime();
BENCHMARK(quasimonotonicity<&reference::sampled_quasimonotonicity_check>)
    ->Name("quasimonotonicity/serial")
    ->Arg(10000)
    ->Arg(100000);
BENCHMARK(minty<&minty_gap>)->Name("minty/parallel")->Arg(10000)->Arg(100000)->UseRealTime();
BENCHMARK(minty<&reference::minty_gap>)->Name("minty/serial")->Arg(10000)->Arg(100000);

BENCHMARK_MAIN();

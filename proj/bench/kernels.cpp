// Serial reference vs OpenMP kernels. Arg 0 = serial, 1 = parallel.

#include "tpsp/oracle.hpp"
#include "tpsp/pascal.hpp"
#include "tpsp/qseries.hpp"

#include <benchmark/benchmark.h>

using namespace tpsp;

namespace {

Exec mode(const benchmark::State& s) { return s.range(0) ? Exec::parallel : Exec::serial; }

void BM_character_x4(benchmark::State& state) {
  const auto lat = Lattice::from_input(preset("x4"));
  for (auto _ : state) benchmark::DoNotOptimize(character(lat, 200, mode(state)));
}

void BM_oracle_x3(benchmark::State& state) {
  const auto lat = Lattice::from_input(preset("x3"));
  for (auto _ : state) benchmark::DoNotOptimize(compare_with_character(lat, 3, 24, {}, mode(state)));
}

void BM_theorem_sweep(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(theorem_sweep({}, mode(state)));
}

void BM_lemma_sweep(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(lemma_sweep(50, 6, 7, mode(state)));
}

void BM_new_relations_x4(benchmark::State& state) {
  const auto lat = Lattice::from_input(preset("x4"));
  for (auto _ : state) benchmark::DoNotOptimize(new_relations_sweep(lat, mode(state)));
}

}  // namespace

BENCHMARK(BM_character_x4)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_oracle_x3)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_theorem_sweep)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_lemma_sweep)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_new_relations_x4)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();

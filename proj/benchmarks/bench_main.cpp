#include <benchmark/benchmark.h>

#include "fcat/corpus.hpp"

using namespace fcat;

namespace {

void BM_EnumerateChain(benchmark::State& state) {
  auto c = chain(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(enumerate_model_structures(c));
}
BENCHMARK(BM_EnumerateChain)->DenseRange(2, 4);

void BM_EnumerateB2(benchmark::State& state) {
  auto b2 = build_poset("B2", {{"00", "01"}, {"00", "10"}, {"01", "11"}, {"10", "11"}});
  for (auto _ : state) benchmark::DoNotOptimize(enumerate_model_structures(b2));
}
BENCHMARK(BM_EnumerateB2);

void BM_IntegralSlice(benchmark::State& state) {
  auto structures = enumerate_model_structures(chain(static_cast<int>(state.range(0))));
  auto fm = slice_functor(structures.front());
  for (auto _ : state) benchmark::DoNotOptimize(build_integral(fm, BuildMode::Force));
}
BENCHMARK(BM_IntegralSlice)->DenseRange(2, 4);

void BM_ArrowStructures(benchmark::State& state) {
  auto mc = all_weak_interval();
  for (auto _ : state) benchmark::DoNotOptimize(arrow_structures(mc));
}
BENCHMARK(BM_ArrowStructures);

void BM_RoundtripFunctor(benchmark::State& state) {
  auto mc = enumerate_model_structures(chain(3)).back();
  auto fm = coslice_functor(mc);
  for (auto _ : state) benchmark::DoNotOptimize(roundtrip_functor(fm));
}
BENCHMARK(BM_RoundtripFunctor);

void BM_Corpus(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(generate_corpus());
}
BENCHMARK(BM_Corpus)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();

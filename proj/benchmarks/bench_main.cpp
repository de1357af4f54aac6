#include "pillai/enumerate.hpp"
#include "pillai/search.hpp"
#include "pillai/sieve.hpp"

#include <benchmark/benchmark.h>

using namespace pillai;

static void BM_EnumerateBox(benchmark::State& state) {
  const auto box = static_cast<unsigned long>(state.range(0));
  const PillaiInstance inst = PillaiInstance::parse("3,2,13,1,1");
  for (auto _ : state) benchmark::DoNotOptimize(enumerate_solutions(inst, {box, box, 1, SignMode::all}));
}
BENCHMARK(BM_EnumerateBox)->Arg(24)->Arg(64)->Arg(128);

static void BM_RefineStep(benchmark::State& state) {
  const PairEquation eq = PairEquation::parse("1,3,1,2,1,1,1,1");
  const SieveState start = initial_state(eq);
  const auto table = OrderTable::get(eq.a, eq.b, 64);
  for (auto _ : state) {
    SieveState st = start;
    for (const auto& p : table->entries()) {
      if (st.residues.empty() || st.mod_x > 100000 || st.mod_y > 100000) break;
      st = refine_step(st, eq, p);
    }
    benchmark::DoNotOptimize(st);
  }
}
BENCHMARK(BM_RefineStep);

static void BM_SievePair(benchmark::State& state) {
  const PairEquation eq = PairEquation::parse("1,7,1,5,1,1,1,0");
  for (auto _ : state) benchmark::DoNotOptimize(sieve_pair(eq));
}
BENCHMARK(BM_SievePair)->Unit(benchmark::kMillisecond);

static void BM_VerifyAtMostTwo(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(verify_at_most_two(1, 7, 1, 5));
}
BENCHMARK(BM_VerifyAtMostTwo)->Unit(benchmark::kMillisecond);

static void BM_CorollaryTuple(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(corollary_tuple({1, 3, 1, 2}));
}
BENCHMARK(BM_CorollaryTuple)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();

#include <benchmark/benchmark.h>

#include "pseudoreg/curves.hpp"
#include "pseudoreg/hypersurface.hpp"

using namespace pseudoreg;

namespace {

Exec mode(const benchmark::State& st) { return st.range(0) ? Exec::Parallel : Exec::Serial; }

void BM_SublinesA_q4t4(benchmark::State& st) {
  const FieldTower F(2, 2, 4);
  for (auto _ : st) benchmark::DoNotOptimize(enumerate_sublines_A(F, mode(st)));
}

void BM_SublinesB_q5t5(benchmark::State& st) {
  const FieldTower F(5, 1, 5);
  for (auto _ : st) benchmark::DoNotOptimize(enumerate_sublines_B(F, mode(st)));
}

void BM_QLines_q4t3(benchmark::State& st) {
  const FieldTower F(2, 2, 3);
  for (auto _ : st) benchmark::DoNotOptimize(all_lines_bruteforce(F, mode(st)));
}

void BM_Carrier_q5t3(benchmark::State& st) {
  const FieldTower F(5, 1, 3);
  for (auto _ : st) benchmark::DoNotOptimize(verify_carrier_curves(F, 1, mode(st)));
}

}  // namespace

// Arg 0 = serial reference, 1 = OpenMP.
BENCHMARK(BM_SublinesA_q4t4)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SublinesB_q5t5)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_QLines_q4t3)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Carrier_q5t3)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();

// Serial vs OpenMP kernels on judge, is_complete and the oracle closure.

#include <benchmark/benchmark.h>

#include "polygate/judge.hpp"
#include "polygate/oracle.hpp"

using namespace polygate;

namespace {

const char* const kSets[] = {"NAND/NOR", "AND/NOTA, NOTA/OR", "NAND/NOR/ANDNA, OR/ANDNB/XOR"};

KernelMode kernel_of(const benchmark::State& state) {
  return state.range(1) == 0 ? KernelMode::serial : KernelMode::parallel;
}

void label(benchmark::State& state) {
  state.SetLabel(std::string(kSets[state.range(0)]) + (state.range(1) == 0 ? " serial" : " parallel"));
}

void BM_JudgeNot(benchmark::State& state) {
  const auto set = parse_gate_set(kSets[state.range(0)]);
  for (auto _ : state) benchmark::DoNotOptimize(judge(set, Target::NOT, ConstantsPolicy::allow, kernel_of(state)));
  label(state);
}

void BM_JudgeAnd(benchmark::State& state) {
  const auto set = parse_gate_set(kSets[state.range(0)]);
  for (auto _ : state) benchmark::DoNotOptimize(judge(set, Target::AND, ConstantsPolicy::allow, kernel_of(state)));
  label(state);
}

void BM_IsComplete(benchmark::State& state) {
  const auto set = parse_gate_set(kSets[state.range(0)]);
  for (auto _ : state) {
    benchmark::DoNotOptimize(is_complete(set, {ConstantsPolicy::allow, false, kernel_of(state)}));
  }
  label(state);
}

void BM_OracleClose(benchmark::State& state) {
  const auto set = parse_gate_set(kSets[state.range(0)]);
  for (auto _ : state) benchmark::DoNotOptimize(close(set, ConstantsPolicy::allow, kernel_of(state)));
  label(state);
}

void two_mode_args(benchmark::internal::Benchmark* b) {
  for (int set = 0; set < 2; ++set) {
    for (int kernel = 0; kernel < 2; ++kernel) b->Args({set, kernel});
  }
}

void all_args(benchmark::internal::Benchmark* b) {
  for (int set = 0; set < 3; ++set) {
    for (int kernel = 0; kernel < 2; ++kernel) b->Args({set, kernel});
  }
}

}  // namespace

BENCHMARK(BM_JudgeNot)->Apply(all_args)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_JudgeAnd)->Apply(all_args)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_IsComplete)->Apply(all_args)->Unit(benchmark::kMillisecond);
// The 3-mode closure walks 2^24 functions; keep the oracle to 2 modes.
BENCHMARK(BM_OracleClose)->Apply(two_mode_args)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();

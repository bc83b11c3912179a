#include <benchmark/benchmark.h>

#include "dis/algorithms.hpp"

namespace {

dis::StateVector zero_state(unsigned width) {
  return dis::make_basis_state(dis::RegisterLayout({{"a", width}, {"v", 2}}), {{"a", 0}, {"v", 0}});
}

void BM_Hadamard(benchmark::State& state) {
  const auto psi = zero_state(static_cast<unsigned>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(dis::hadamard(psi, "a"));
}
BENCHMARK(BM_Hadamard)->DenseRange(4, 16, 4);

void BM_Qft(benchmark::State& state) {
  const auto psi = dis::hadamard(zero_state(static_cast<unsigned>(state.range(0))), "a");
  for (auto _ : state) benchmark::DoNotOptimize(dis::qft(psi, "a"));
}
BENCHMARK(BM_Qft)->DenseRange(4, 12, 2);

void BM_SimonRun(benchmark::State& state) {
  const auto n = static_cast<unsigned>(state.range(0));
  dis::Rng rng(1);
  const auto oracle = dis::build_two_to_one(n, 1, rng, dis::TwoToOneFamily::xor_spaced);
  for (auto _ : state) benchmark::DoNotOptimize(dis::run_simon(oracle, rng));
}
BENCHMARK(BM_SimonRun)->DenseRange(2, 8, 2);

void BM_ShorRun(benchmark::State& state) {
  dis::Rng rng(1);
  for (auto _ : state) benchmark::DoNotOptimize(dis::run_shor_period(7, 15, rng));
}
BENCHMARK(BM_ShorRun);

}  // namespace

BENCHMARK_MAIN();

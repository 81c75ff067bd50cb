#include <benchmark/benchmark.h>

#include <goldmitch/cyclesim.hpp>
#include <goldmitch/goldschmidt.hpp>
#include <goldmitch/harness.hpp>
#include <goldmitch/mitchell.hpp>

using namespace goldmitch;

namespace {

// A fixed pool of nonzero operand pairs so every run measures the same work.
std::vector<std::pair<SignedInput, SignedInput>> operand_pool(std::size_t n) {
  SplitMix64 rng(12345);
  std::vector<std::pair<SignedInput, SignedInput>> pool;
  pool.reserve(n);
  while (pool.size() < n) {
    const BigInt a = draw_signed(rng, 32);
    const BigInt b = draw_signed(rng, 32);
    if (b == 0) continue;
    pool.emplace_back(SignedInput(a, 32), SignedInput(b, 32));
  }
  return pool;
}

DividerConfig config_for(MultiplierStrategy strat) {
  DividerConfig cfg;
  cfg.strategy = strat;
  return cfg;
}

void BM_divide(benchmark::State& state, MultiplierStrategy strat) {
  const DividerConfig cfg = config_for(strat);
  const auto pool = operand_pool(256);
  std::size_t i = 0;
  for (auto _ : state) {
    const auto& [a, b] = pool[i++ & 255];
    benchmark::DoNotOptimize(divide(a, b, cfg));
  }
}

void BM_run_cycles(benchmark::State& state) {
  const DividerConfig cfg;
  const auto pool = operand_pool(256);
  std::size_t i = 0;
  for (auto _ : state) {
    const auto& [a, b] = pool[i++ & 255];
    benchmark::DoNotOptimize(run_cycles(a, b, cfg));
  }
}

void BM_mitchell_multiply(benchmark::State& state, MultMode mode) {
  const DividerConfig cfg;
  SplitMix64 rng(777);
  std::vector<std::pair<FxValue, FxValue>> pool;
  while (pool.size() < 256) {
    const BigInt a = abs(draw_signed(rng, 32));
    const BigInt b = abs(draw_signed(rng, 32));
    if (a == 0 || b == 0) continue;
    pool.emplace_back(FxValue(BigUint(a), FxFormat(16, 16)),
                      FxValue(BigUint(b), FxFormat(16, 16)));
  }
  std::size_t i = 0;
  for (auto _ : state) {
    const auto& [a, b] = pool[i++ & 255];
    benchmark::DoNotOptimize(mitchell_multiply(a, b, mode, cfg));
  }
}

void BM_exact_quotient(benchmark::State& state) {
  SplitMix64 rng(31415);
  std::vector<std::pair<BigInt, BigInt>> pool;
  while (pool.size() < 256) {
    const BigInt a = draw_signed(rng, 32);
    const BigInt b = draw_signed(rng, 32);
    if (b == 0) continue;
    pool.emplace_back(a, b);
  }
  std::size_t i = 0;
  for (auto _ : state) {
    const auto& [a, b] = pool[i++ & 255];
    benchmark::DoNotOptimize(exact_quotient(a, b));
  }
}

BENCHMARK_CAPTURE(BM_divide, exact, MultiplierStrategy::exact);
BENCHMARK_CAPTURE(BM_divide, mitchell_corrected, MultiplierStrategy::mitchell_corrected);
BENCHMARK_CAPTURE(BM_divide, mitchell_uncorrected, MultiplierStrategy::mitchell_uncorrected);
BENCHMARK(BM_run_cycles);
BENCHMARK_CAPTURE(BM_mitchell_multiply, uncorrected, MultMode::uncorrected);
BENCHMARK_CAPTURE(BM_mitchell_multiply, corrected, MultMode::corrected);
BENCHMARK(BM_exact_quotient);

}  // namespace

BENCHMARK_MAIN();

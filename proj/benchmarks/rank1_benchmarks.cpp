#include <benchmark/benchmark.h>

#include <vector>

#include "rank1/correl.hpp"
#include "rank1/schedule.hpp"
#include "rank1/tower.hpp"
#include "rank1/verify.hpp"

using namespace rank1;

namespace {

const ConstructionSchedule& sidon_schedule() {
  static const std::vector<std::uint64_t> cuts{3, 4, 5, 6};
  static const ConstructionSchedule s = sidon_growth_schedule(BigInt(1), cuts, 2);
  return s;
}

const ConstructionSchedule& algebraic() {
  static const std::vector<std::uint64_t> primes{5, 11, 23, 47};
  static const ConstructionSchedule s = algebraic_schedule(BigInt(4), primes);
  return s;
}

void BM_ExpandLevel(benchmark::State& state) {
  const auto& s = algebraic();
  const auto J = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(expand_level(s, 1, 0, J));
  state.SetItemsProcessed(state.iterations() *
                          static_cast<std::int64_t>(s.base_denominator(J) / s.base_denominator(1)));
}
BENCHMARK(BM_ExpandLevel)->DenseRange(2, 5);

void BM_ShiftLevels(benchmark::State& state) {
  const auto& s = sidon_schedule();
  const LevelSet A = expand_set(s, full_tower(s, 1), 3);
  const BigInt m = s.height(3) / 2;
  for (auto _ : state) benchmark::DoNotOptimize(shift_levels(s, A, m, 2));
}
BENCHMARK(BM_ShiftLevels);

void BM_CorrelationSeries(benchmark::State& state) {
  const auto& s = sidon_schedule();
  const LevelSet A = base_level(s, 1);
  const BigInt from = s.height(2) + 1;
  const BigInt to = from + state.range(0) - 1;
  for (auto _ : state) benchmark::DoNotOptimize(correlation_series(s, A, A, from, to, BigInt(1)));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_CorrelationSeries)->Arg(1000)->Arg(10000);

void BM_VerifySidon(benchmark::State& state) {
  const auto& s = sidon_schedule();
  const auto j = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(verify_sidon(s, j, 1'000'000));
}
BENCHMARK(BM_VerifySidon)->DenseRange(1, 3);

void BM_JoiningCoefficients(benchmark::State& state) {
  const auto& s = sidon_schedule();
  const BigInt l = s.height(2) + 1;
  for (auto _ : state) benchmark::DoNotOptimize(joining_coefficients(s, 2, l));
}
BENCHMARK(BM_JoiningCoefficients);

}  // namespace
BENCHMARK_MAIN();

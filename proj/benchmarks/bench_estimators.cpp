#include <cmath>

#include <benchmark/benchmark.h>

#include "interx/estimators.hpp"

namespace {

interx::SurvivalCounts power_law_counts(std::size_t levels) {
  std::vector<int> l{30};
  std::vector<std::uint64_t> n{1'000'000};
  for (std::size_t k = 1; k < levels; ++k) {
    l.push_back(l.back() + l.back() / 10 + 1);
    n.push_back(static_cast<std::uint64_t>(1e6 * std::pow(30.0 / l.back(), 1.25)));
  }
  return interx::SurvivalCounts{interx::BoxSchedule::from_levels(std::move(l)), std::move(n)};
}

void BM_Mle(benchmark::State& state) {
  const auto c = power_law_counts(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(interx::mle(c, 0).exponent);
}
BENCHMARK(BM_Mle)->Arg(14)->Arg(71);

void BM_KminScan(benchmark::State& state) {
  const auto c = power_law_counts(71);
  for (auto _ : state) benchmark::DoNotOptimize(interx::kmin_scan(c).size());
}
BENCHMARK(BM_KminScan);

}  // namespace

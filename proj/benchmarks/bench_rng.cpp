#include <benchmark/benchmark.h>

#include "interx/rng.hpp"

namespace {

void BM_NextDirection(benchmark::State& state) {
  interx::LcgSteps steps{interx::spawn_stream(1, 0)};
  for (auto _ : state) benchmark::DoNotOptimize(steps.next_direction());
}
BENCHMARK(BM_NextDirection);

void BM_NextDirectionMiddleBits(benchmark::State& state) {
  interx::LcgSteps steps{interx::spawn_stream(1, 0), interx::DirectionRule::next_bits};
  for (auto _ : state) benchmark::DoNotOptimize(steps.next_direction());
}
BENCHMARK(BM_NextDirectionMiddleBits);

void BM_SpawnStream(benchmark::State& state) {
  std::uint64_t i = 0;
  for (auto _ : state) benchmark::DoNotOptimize(interx::spawn_stream(42, i++));
}
BENCHMARK(BM_SpawnStream);

}  // namespace

#include <benchmark/benchmark.h>

#include "interx/multilevel.hpp"

namespace {

template <class Grid>
void run_samples(benchmark::State& state, const interx::PacketSpec& spec, int l_max) {
  const auto schedule = interx::BoxSchedule::build(30, interx::Rational{11, 10}, l_max);
  Grid grid(schedule.level(schedule.last_index()), spec.packets());
  std::uint64_t i = 0;
  for (auto _ : state) {
    interx::LcgSteps steps{interx::spawn_stream(1, i++)};
    benchmark::DoNotOptimize(interx::run_sample(spec, schedule, steps, grid));
  }
  state.SetItemsProcessed(state.iterations());
}

// Range argument: largest box half-length.
void BM_SampleDense11(benchmark::State& state) {
  run_samples<interx::DenseGrid>(state, interx::PacketSpec({1, 1}), static_cast<int>(state.range(0)));
}
BENCHMARK(BM_SampleDense11)->Arg(103)->Arg(500);

void BM_SampleSparse11(benchmark::State& state) {
  run_samples<interx::SparseGrid>(state, interx::PacketSpec({1, 1}), static_cast<int>(state.range(0)));
}
BENCHMARK(BM_SampleSparse11)->Arg(103);

void BM_SampleDense22(benchmark::State& state) {
  run_samples<interx::DenseGrid>(state, interx::PacketSpec({2, 2}), static_cast<int>(state.range(0)));
}
BENCHMARK(BM_SampleDense22)->Arg(103);

void BM_Campaign(benchmark::State& state) {
  interx::MultilevelSetup setup{interx::PacketSpec({1, 1}),
                                interx::BoxSchedule::build(30, interx::Rational{11, 10}, 103)};
  setup.samples = 1000;
  setup.base_seed = 7;
  for (auto _ : state) benchmark::DoNotOptimize(interx::run_campaign(setup).counts.n.back());
  state.SetItemsProcessed(state.iterations() * setup.samples);
}
BENCHMARK(BM_Campaign)->Unit(benchmark::kMillisecond);

}  // namespace

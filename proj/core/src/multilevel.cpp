#include "interx/multilevel.hpp"

#include <atomic>
#include <memory>
#include <new>

#include "interx/checkpoint.hpp"
#include "interx/digest.hpp"
#include "interx/error.hpp"
#include "interx/parallel.hpp"
#include "interx/rng.hpp"

namespace interx {

namespace {

std::atomic<std::uint64_t> g_simulated{0};

template <class Grid>
std::vector<std::unique_ptr<Grid>> make_grids(const MultilevelSetup& setup, unsigned workers) {
  const int m = setup.schedule.final_length();
  std::vector<std::unique_ptr<Grid>> grids(workers);
  try {
    for (auto& g : grids) g = std::make_unique<Grid>(m, setup.spec.packets());
  } catch (const std::bad_alloc&) {
    throw ConfigError("cannot allocate occupancy grid for Lmax=" + std::to_string(m) +
                      "; lower the worker count or use the sparse grid mode");
  }
  return grids;
}

// Runs samples [done, target) in blocks, calling after_block(done, histogram)
// after each one.
template <class Grid, class AfterBlock>
void run_blocks(const MultilevelSetup& setup, unsigned workers, std::uint64_t& done,
                std::uint64_t target, std::uint64_t block, std::vector<std::uint64_t>& histogram,
                AfterBlock&& after_block) {
  auto grids = make_grids<Grid>(setup, workers);
  const std::size_t levels = histogram.size();
  while (done < target) {
    const std::uint64_t end = std::min(target, done + block);
    std::vector<std::vector<std::uint64_t>> per_worker(workers,
                                                       std::vector<std::uint64_t>(levels, 0));
    parallel_for(done, end, workers, [&](unsigned w, std::uint64_t i) {
      LcgSteps steps{spawn_stream(setup.base_seed, i), setup.walk.direction_rule};
      const std::size_t k = run_sample(setup.spec, setup.schedule, steps, *grids[w], setup.walk);
      ++per_worker[w][k];
    });
    detail::add_simulated_samples(end - done);
    for (const auto& h : per_worker) {
      for (std::size_t k = 0; k < levels; ++k) histogram[k] += h[k];
    }
    done = end;
    after_block(done, histogram);
  }
}

}  // namespace

namespace detail {
void add_simulated_samples(std::uint64_t n) noexcept { g_simulated.fetch_add(n); }
}  // namespace detail

std::uint64_t simulated_sample_count() noexcept { return g_simulated.load(); }

SurvivalCounts SurvivalCounts::from_histogram(BoxSchedule schedule,
                                              const std::vector<std::uint64_t>& histogram) {
  if (histogram.size() != schedule.levels().size()) {
    throw DataError("histogram size does not match the schedule");
  }
  SurvivalCounts c{std::move(schedule), std::vector<std::uint64_t>(histogram.size()), {}, {}};
  std::uint64_t running = 0;
  for (std::size_t k = histogram.size(); k-- > 0;) {
    running += histogram[k];
    c.n[k] = running;
  }
  return c;
}

void SurvivalCounts::validate() const {
  if (n.size() != schedule.levels().size()) {
    throw DataError("counts have " + std::to_string(n.size()) + " entries for " +
                    std::to_string(schedule.levels().size()) + " levels");
  }
  for (std::size_t k = 1; k < n.size(); ++k) {
    if (n[k] > n[k - 1]) {
      throw DataError("survivor counts increase at level " + std::to_string(k) + " (L=" +
                      std::to_string(schedule.level(k)) + ")");
    }
  }
}

std::uint64_t config_digest(const MultilevelSetup& setup) {
  Fnv1a h;
  h.text("multilevel/v1");
  for (int n : setup.spec.counts()) h.value(n);
  h.value(-1);
  for (int l : setup.schedule.levels()) h.value(l);
  h.value(-1);
  h.value(setup.samples).value(setup.base_seed);
  h.value(setup.walk.record_entry_cell ? 1 : 0);
  h.value(static_cast<int>(setup.walk.direction_rule));
  return h.digest();
}

GridMode resolve_grid_mode(GridMode mode, int half_length, std::uint64_t memory_budget) {
  if (mode != GridMode::automatic) return mode;
  const std::uint64_t side = 2 * static_cast<std::uint64_t>(half_length) + 1;
  return side * side <= memory_budget ? GridMode::dense : GridMode::sparse;
}

CampaignResult run_campaign(const MultilevelSetup& setup, const CheckpointPolicy* checkpoint) {
  if (setup.samples < 1) throw ConfigError("sample count must be >= 1");
  const std::size_t levels = setup.schedule.levels().size();
  const std::uint64_t digest = config_digest(setup);

  std::vector<std::uint64_t> histogram(levels, 0);
  std::uint64_t done = 0;
  bool resumed = false;

  if (checkpoint && !checkpoint->path.empty() && std::filesystem::exists(checkpoint->path)) {
    Checkpoint cp = read_checkpoint(checkpoint->path);
    if (cp.config_digest != digest) {
      throw ConfigError("checkpoint " + checkpoint->path.string() +
                        " was written by a different configuration; refusing to resume");
    }
    if (cp.histogram.size() != levels || cp.completed > setup.samples) {
      throw DataError("checkpoint " + checkpoint->path.string() + " is inconsistent");
    }
    histogram = std::move(cp.histogram);
    done = cp.completed;
    resumed = true;
  }

  const unsigned workers = std::max(1U, setup.workers);
  const GridMode mode =
      resolve_grid_mode(setup.grid_mode, setup.schedule.final_length(), setup.memory_budget);
  std::uint64_t target = setup.samples;
  if (checkpoint && checkpoint->stop_after > 0) target = std::min(target, checkpoint->stop_after);
  const std::uint64_t block =
      checkpoint && checkpoint->every > 0 ? checkpoint->every : setup.samples;

  auto after_block = [&](std::uint64_t completed, const std::vector<std::uint64_t>& h) {
    if (checkpoint && !checkpoint->path.empty()) {
      write_checkpoint(checkpoint->path, Checkpoint{digest, setup.base_seed, completed, h});
    }
  };
  if (done < target) {
    if (mode == GridMode::dense) {
      run_blocks<DenseGrid>(setup, workers, done, target, block, histogram, after_block);
    } else {
      run_blocks<SparseGrid>(setup, workers, done, target, block, histogram, after_block);
    }
  }

  CampaignResult result{SurvivalCounts::from_histogram(setup.schedule, histogram), done,
                        done == setup.samples, resumed};
  result.counts.spec = setup.spec;
  result.counts.base_seed = setup.base_seed;
  return result;
}

}  // namespace interx

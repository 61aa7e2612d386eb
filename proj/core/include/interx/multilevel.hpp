#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <vector>

#include "interx/lattice.hpp"
#include "interx/packet.hpp"
#include "interx/schedule.hpp"
#include "interx/walkers.hpp"

namespace interx {

/// Per-level survivor tallies N_0 >= N_1 >= ... >= N_K.
struct SurvivalCounts {
  BoxSchedule schedule;
  std::vector<std::uint64_t> n;
  std::optional<PacketSpec> spec;         // absent for ingested tables
  std::optional<std::uint64_t> base_seed;

  /// N_k from a histogram of per-sample results (h[k] = samples whose highest
  /// survived level is k).
  static SurvivalCounts from_histogram(BoxSchedule schedule,
                                       const std::vector<std::uint64_t>& histogram);

  /// Throws DataError unless sizes agree and counts are nonincreasing.
  void validate() const;

  friend bool operator==(const SurvivalCounts&, const SurvivalCounts&) = default;
};

/// Runs one sample through the schedule and returns the highest level index
/// survived (0 when the first level run already intersects). The grid is reset
/// on entry and left dirty on exit.
template <class Grid, StepSource S>
std::size_t run_sample(const PacketSpec& spec, const BoxSchedule& schedule, S& steps, Grid& grid,
                       const WalkOptions& options = {}) {
  grid.reset();
  WalkerEnsemble ensemble = scatter_from_origin(spec, schedule.level(0), steps);
  const std::size_t last = schedule.last_index();
  for (std::size_t k = 1; k <= last; ++k) {
    if (advance_level(ensemble, schedule.level(k), grid, steps, options) ==
        LevelOutcome::intersected) {
      return k - 1;
    }
  }
  return last;
}

enum class GridMode { automatic, dense, sparse };

inline constexpr std::uint64_t kDefaultMemoryBudget = 4ULL << 30;

/// Everything that determines the outcome of a scheme-1 campaign.
struct MultilevelSetup {
  PacketSpec spec;
  BoxSchedule schedule;
  std::uint64_t samples = 0;
  std::uint64_t base_seed = 0;
  unsigned workers = 1;
  WalkOptions walk;
  GridMode grid_mode = GridMode::automatic;
  std::uint64_t memory_budget = kDefaultMemoryBudget;
};

/// Digest over every field that affects the counts (not workers, not grid
/// mode, not memory budget).
std::uint64_t config_digest(const MultilevelSetup& setup);

/// Resolves `automatic` against the memory budget for a box of half-length m.
GridMode resolve_grid_mode(GridMode mode, int half_length, std::uint64_t memory_budget);

struct CheckpointPolicy {
  std::filesystem::path path;
  /// Persist after every `every` samples (0: only at the end).
  std::uint64_t every = 0;
  /// Stop after this many samples have been completed in total (0: run to
  /// the end). Simulates an interrupted run.
  std::uint64_t stop_after = 0;
};

struct CampaignResult {
  /// Counts over the completed samples; N_0 == completed.
  SurvivalCounts counts;
  std::uint64_t completed = 0;
  bool complete = false;
  bool resumed = false;
};

/// Runs setup.samples independent samples. Sample i always uses
/// spawn_stream(base_seed, i), so the counts do not depend on the number of
/// workers or on interruption and resumption.
CampaignResult run_campaign(const MultilevelSetup& setup,
                            const CheckpointPolicy* checkpoint = nullptr);

/// Total number of samples simulated by this process (instrumentation).
std::uint64_t simulated_sample_count() noexcept;

namespace detail {
void add_simulated_samples(std::uint64_t n) noexcept;
}

}  // namespace interx

#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "interx/estimators.hpp"
#include "interx/lattice.hpp"
#include "interx/multilevel.hpp"
#include "interx/rng.hpp"
#include "interx/walkers.hpp"

namespace interx {

/// Simulation state frozen when a sample first survives to the L1 box: the
/// walker positions on the L1 boundary plus the occupancy of everything the
/// sample touched.
template <class Grid>
struct MasterSample {
  WalkerEnsemble walkers;
  typename Grid::Snapshot occupancy;
  int l1 = 0;
  std::uint64_t attempt_index = 0;
};

/// Step 1 then a single level run from L0 to L1. Returns nullopt when the
/// packets intersect on the way.
template <class Grid, StepSource S>
std::optional<MasterSample<Grid>> generate_master(const PacketSpec& spec, int l0, int l1,
                                                  S& steps, Grid& grid,
                                                  const WalkOptions& options = {}) {
  if (l0 >= l1) throw ConfigError("two-level scheme needs L0 < L1");
  grid.reset();
  WalkerEnsemble ensemble = scatter_from_origin(spec, l0, steps);
  if (advance_level(ensemble, l1, grid, steps, options) == LevelOutcome::intersected) {
    return std::nullopt;
  }
  return MasterSample<Grid>{std::move(ensemble), grid.snapshot(), l1, 0};
}

/// Runs m continuation trials of `master` to the L2 box; trial t draws its
/// steps from make_steps(t). Returns the number of trials without a p-fold
/// intersection. `grid` is scratch space and must cover L2.
template <class Grid, class MakeSteps>
int run_trials(const MasterSample<Grid>& master, int m, int l2, Grid& grid, MakeSteps&& make_steps,
               const WalkOptions& options = {}) {
  if (m < 1) throw ConfigError("trial count must be >= 1");
  if (l2 > grid.half_length()) throw ConfigError("grid does not cover L2");
  for (const Cell& c : master.walkers.positions) {
    if (max_norm(c) >= l2) throw ConfigError("L2 must exceed every master walker position");
  }
  int survived = 0;
  for (int t = 0; t < m; ++t) {
    grid.restore(master.occupancy);
    WalkerEnsemble walkers = master.walkers;
    auto steps = make_steps(static_cast<std::uint64_t>(t));
    if (advance_level(walkers, l2, grid, steps, options) == LevelOutcome::survived) ++survived;
  }
  return survived;
}

/// Trial streams of one master: trial t uses spawn_stream(trial_seed, t).
template <class Grid>
int run_trials(const MasterSample<Grid>& master, int m, int l2, Grid& grid,
               std::uint64_t trial_seed, const WalkOptions& options = {}) {
  return run_trials(
      master, m, l2, grid,
      [&](std::uint64_t t) { return LcgSteps{spawn_stream(trial_seed, t), options.direction_rule}; },
      options);
}

/// Survivor counts x_i out of m trials for each of n master samples.
struct TrialBatch {
  std::vector<int> survivors;  // x_i
  int trials_per_master = 0;   // m
  std::vector<std::uint64_t> master_attempts;  // originating attempt index of each master

  [[nodiscard]] std::size_t masters() const noexcept { return survivors.size(); }
  [[nodiscard]] double fraction(std::size_t i) const {
    return static_cast<double>(survivors.at(i)) / trials_per_master;
  }
};

/// Mean survival fraction p-hat and the standard error sigma_p of that mean.
struct FractionSummary {
  double p_hat = 0.0;
  double sigma_p = 0.0;
};

FractionSummary summarize(const TrialBatch& batch);

/// exponent = -log(p) / log(L2/L1), sigma = sigma_p / (log(L2/L1) p).
EstimateReport two_level_estimate(const FractionSummary& summary, double l2_over_l1 = 2.0,
                                  std::uint64_t input_digest = 0);
EstimateReport two_level_estimate(const TrialBatch& batch, double l2_over_l1 = 2.0);

/// Trial count minimizing (T1 + m T2)(var + mean/m), i.e. the variance bound of
/// p-hat at fixed total CPU time. The result is the better of the two integers
/// around sqrt(T1 mean / (T2 var)).
std::int64_t optimal_trial_count(double t1, double t2, double var_ps, double mean_ps);

struct TwoLevelSetup {
  PacketSpec spec;
  int l0 = 30;
  int l1 = 0;
  int l2 = 0;
  std::uint64_t masters = 0;  // n
  int trials = 1000;          // m
  std::uint64_t base_seed = 0;
  unsigned workers = 1;
  WalkOptions walk;
  GridMode grid_mode = GridMode::automatic;
  std::uint64_t memory_budget = kDefaultMemoryBudget;
};

struct TwoLevelResult {
  TrialBatch batch;
  std::uint64_t attempts = 0;       // master attempts examined
  std::uint64_t dead_attempts = 0;  // attempts that intersected before L1
};

/// Generates masters from attempt streams spawn_stream(base_seed, a),
/// a = 0, 1, ..., keeps the first n survivors in attempt order and runs m
/// trials on each. Deterministic in base_seed for any worker count.
TwoLevelResult run_twolevel_campaign(const TwoLevelSetup& setup);

/// Seed of the trial streams belonging to master attempt `attempt`.
std::uint64_t trial_seed_for(std::uint64_t base_seed, std::uint64_t attempt) noexcept;

/// Histogram of the fractions x_i/m over [0, 1] with `bins` equal bins; the
/// value 1 falls into the last bin.
std::vector<std::uint64_t> fraction_histogram(const TrialBatch& batch, int bins);

}  // namespace interx

#include "interx/twolevel.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <mutex>
#include <new>

#include "interx/digest.hpp"
#include "interx/parallel.hpp"

namespace interx {

namespace {

constexpr std::uint64_t kTrialSeedTag = 0xD1B54A32D192ED03ULL;

struct MasterOutcome {
  std::uint64_t attempt;
  int survivors;
};

template <class Grid>
TwoLevelResult run_campaign_with(const TwoLevelSetup& setup) {
  const unsigned workers = std::max(1U, setup.workers);
  std::vector<std::unique_ptr<Grid>> grids(workers);
  try {
    for (auto& g : grids) g = std::make_unique<Grid>(setup.l2, setup.spec.packets());
  } catch (const std::bad_alloc&) {
    throw ConfigError("cannot allocate occupancy grid for L2=" + std::to_string(setup.l2) +
                      "; lower the worker count or use the sparse grid mode");
  }

  std::vector<MasterOutcome> found;
  std::mutex found_mutex;
  std::uint64_t next_attempt = 0;
  while (found.size() < setup.masters) {
    // Round size from the survival rate seen so far; depends only on earlier
    // results, so the sequence of rounds is the same for any worker count.
    std::uint64_t round = std::max<std::uint64_t>(64, 4ULL * workers);
    if (!found.empty()) {
      const double rate = static_cast<double>(found.size()) / static_cast<double>(next_attempt);
      const double want = static_cast<double>(setup.masters - found.size()) / rate;
      round = std::clamp<std::uint64_t>(static_cast<std::uint64_t>(std::ceil(want)), 16,
                                        next_attempt * 4 + 64);
    } else if (next_attempt > 0) {
      round = next_attempt * 2;
    }
    const std::uint64_t begin = next_attempt;
    const std::uint64_t end = begin + round;
    parallel_for(
        begin, end, workers,
        [&](unsigned w, std::uint64_t a) {
          Grid& grid = *grids[w];
          LcgSteps steps{spawn_stream(setup.base_seed, a), setup.walk.direction_rule};
          auto master = generate_master(setup.spec, setup.l0, setup.l1, steps, grid, setup.walk);
          if (!master) return;
          master->attempt_index = a;
          const int x = run_trials(*master, setup.trials, setup.l2, grid,
                                   trial_seed_for(setup.base_seed, a), setup.walk);
          std::lock_guard lock(found_mutex);
          found.push_back({a, x});
        },
        1);
    detail::add_simulated_samples(end - begin);
    next_attempt = end;
  }

  std::sort(found.begin(), found.end(),
            [](const MasterOutcome& a, const MasterOutcome& b) { return a.attempt < b.attempt; });
  found.resize(setup.masters);

  TwoLevelResult result;
  result.batch.trials_per_master = setup.trials;
  for (const auto& f : found) {
    result.batch.survivors.push_back(f.survivors);
    result.batch.master_attempts.push_back(f.attempt);
  }
  result.attempts = found.back().attempt + 1;
  result.dead_attempts = result.attempts - setup.masters;
  return result;
}

}  // namespace

std::uint64_t trial_seed_for(std::uint64_t base_seed, std::uint64_t attempt) noexcept {
  return spawn_stream(base_seed ^ kTrialSeedTag, attempt).next();
}

FractionSummary summarize(const TrialBatch& batch) {
  const std::size_t n = batch.masters();
  if (n < 2) {
    throw EstimationError(EstimationFailure::insufficient_data,
                          "two-level estimate needs at least two master samples");
  }
  if (batch.trials_per_master < 1) throw ConfigError("trial count must be >= 1");
  long double mean = 0;
  for (std::size_t i = 0; i < n; ++i) mean += batch.fraction(i);
  mean /= static_cast<long double>(n);
  long double ss = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const long double d = batch.fraction(i) - mean;
    ss += d * d;
  }
  const long double var_of_mean = ss / (static_cast<long double>(n) * (n - 1));
  return {static_cast<double>(mean), static_cast<double>(std::sqrt(var_of_mean))};
}

EstimateReport two_level_estimate(const FractionSummary& summary, double l2_over_l1,
                                  std::uint64_t input_digest) {
  if (!(l2_over_l1 > 1.0)) throw DomainError("L2/L1 must exceed 1");
  if (!(summary.p_hat > 0.0)) {
    throw EstimationError(EstimationFailure::all_trials_dead,
                          "every trial died: survival fraction is 0");
  }
  if (summary.sigma_p < 0.0) throw DomainError("sigma_p must be non-negative");
  const double log_ratio = std::log(l2_over_l1);
  const double exponent = -std::log(summary.p_hat) / log_ratio;
  const double sigma = summary.sigma_p / (log_ratio * summary.p_hat);
  return make_report(exponent, sigma, EstimateMethod::two_level, input_digest);
}

EstimateReport two_level_estimate(const TrialBatch& batch, double l2_over_l1) {
  Fnv1a h;
  h.text("trials/v1").value(batch.trials_per_master);
  for (int x : batch.survivors) h.value(x);
  return two_level_estimate(summarize(batch), l2_over_l1, h.digest());
}

std::int64_t optimal_trial_count(double t1, double t2, double var_ps, double mean_ps) {
  if (!(t1 > 0 && t2 > 0 && var_ps > 0 && mean_ps > 0)) {
    throw DomainError("optimal_trial_count needs positive inputs");
  }
  auto cost = [&](double m) { return (t1 + m * t2) * (var_ps + mean_ps / m); };
  const double root = std::sqrt(t1 * mean_ps / (t2 * var_ps));
  const auto below = std::max<std::int64_t>(1, static_cast<std::int64_t>(std::floor(root)));
  const std::int64_t above = below + 1;
  return cost(static_cast<double>(above)) < cost(static_cast<double>(below)) ? above : below;
}

TwoLevelResult run_twolevel_campaign(const TwoLevelSetup& setup) {
  if (!(setup.l0 >= 2 && setup.l0 < setup.l1 && setup.l1 < setup.l2)) {
    throw ConfigError("two-level scheme needs 2 <= L0 < L1 < L2");
  }
  if (setup.masters < 2) throw ConfigError("two-level scheme needs at least two masters");
  if (setup.trials < 1) throw ConfigError("trial count must be >= 1");
  const GridMode mode = resolve_grid_mode(setup.grid_mode, setup.l2, setup.memory_budget);
  return mode == GridMode::dense ? run_campaign_with<DenseGrid>(setup)
                                 : run_campaign_with<SparseGrid>(setup);
}

std::vector<std::uint64_t> fraction_histogram(const TrialBatch& batch, int bins) {
  if (bins < 1) throw ConfigError("histogram needs at least one bin");
  std::vector<std::uint64_t> h(static_cast<std::size_t>(bins), 0);
  const auto m = static_cast<std::int64_t>(batch.trials_per_master);
  for (int x : batch.survivors) {
    const std::int64_t idx = std::min<std::int64_t>(bins - 1, static_cast<std::int64_t>(x) * bins / m);
    ++h[static_cast<std::size_t>(idx)];
  }
  return h;
}

}  // namespace interx

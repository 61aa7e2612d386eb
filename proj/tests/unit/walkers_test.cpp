#include <algorithm>
#include <cmath>
#include <map>
#include <utility>
#include <vector>

#include <boost/math/distributions/chi_squared.hpp>
#include <gtest/gtest.h>

#include "interx/lattice.hpp"
#include "interx/multilevel.hpp"
#include "interx/walkers.hpp"
#include "support.hpp"

namespace {

using interx::Cell;
using interx::DenseGrid;
using interx::LevelOutcome;
using interx::PacketSpec;
using interx::WalkerEnsemble;
using interx::WalkOptions;
using namespace interx::testing;

TEST(Walkers, ForcedCollisionThroughSharedCell) {
  const PacketSpec spec({1, 1});
  WalkerEnsemble e(spec);
  e.positions = {{-1, 1}, {1, 1}};
  DenseGrid grid(5, 2);
  grid.reset();
  ScriptedSteps steps;
  steps.then(kRight).then(kUp, 4);  // walker 0 through (0,1) and out at (0,5)
  steps.then(kLeft);                // walker 1 into (0,1)
  EXPECT_EQ(interx::advance_level(e, 5, grid, steps), LevelOutcome::intersected);
  EXPECT_TRUE(steps.exhausted());
  EXPECT_EQ(grid.mask_at({0, 1}), 0b11);
}

TEST(Walkers, DisjointPathsSurviveOnBoundary) {
  const PacketSpec spec({1, 1});
  WalkerEnsemble e(spec);
  e.positions = {{0, 1}, {0, -1}};
  DenseGrid grid(5, 2);
  grid.reset();
  ScriptedSteps steps;
  steps.then(kUp, 4).then(kDown, 4);
  ASSERT_EQ(interx::advance_level(e, 5, grid, steps), LevelOutcome::survived);
  EXPECT_EQ(e.positions[0], (Cell{0, 5}));
  EXPECT_EQ(e.positions[1], (Cell{0, -5}));
  for (const Cell& c : e.positions) EXPECT_EQ(interx::max_norm(c), 5);
  EXPECT_EQ(grid.mask_at({0, 5}), 0);
  EXPECT_EQ(grid.mask_at({0, -5}), 0);
  EXPECT_EQ(grid.mask_at({0, 4}), 0b01);
  EXPECT_EQ(grid.mask_at({0, -4}), 0b10);
}

// Walker 1 steps into walker 0's starting cell and nowhere else walker 0 went.
LevelOutcome entry_cell_case(bool record_entry) {
  const PacketSpec spec({1, 1});
  WalkerEnsemble e(spec);
  e.positions = {{0, 1}, {-1, 1}};
  DenseGrid grid(5, 2);
  grid.reset();
  ScriptedSteps steps;
  steps.then(kUp, 4).then(kRight).then(kDown, 6);
  WalkOptions options;
  options.record_entry_cell = record_entry;
  return interx::advance_level(e, 5, grid, steps, options);
}

TEST(Walkers, EntryCellIsNotRecordedByDefault) {
  EXPECT_FALSE(WalkOptions{}.record_entry_cell);
  EXPECT_EQ(entry_cell_case(false), LevelOutcome::survived);
}

TEST(Walkers, EntryCellRecordingCanBeSwitchedOn) {
  EXPECT_EQ(entry_cell_case(true), LevelOutcome::intersected);
}

TEST(Walkers, SingleStepToBoundaryRecordsNothing) {
  const PacketSpec spec({1, 1});
  WalkerEnsemble e(spec);
  e.positions = {{4, 0}, {-4, 0}};
  DenseGrid grid(5, 2);
  grid.reset();
  ScriptedSteps steps;
  steps.then(kRight).then(kLeft);
  EXPECT_EQ(interx::advance_level(e, 5, grid, steps), LevelOutcome::survived);
  EXPECT_EQ(grid.count_nonzero(), 0U);
}

TEST(Walkers, SameStateGivesSameOutcome) {
  const PacketSpec spec({1, 1, 2});
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    LevelOutcome outcome[2];
    std::vector<Cell> final_positions[2];
    interx::RngStream end_state[2];
    for (int run = 0; run < 2; ++run) {
      interx::LcgSteps steps{interx::spawn_stream(seed, 0)};
      DenseGrid grid(40, spec.packets());
      grid.reset();
      auto e = interx::scatter_from_origin(spec, 10, steps);
      outcome[run] = interx::advance_level(e, 40, grid, steps);
      final_positions[run] = e.positions;
      end_state[run] = steps.stream;
    }
    EXPECT_EQ(outcome[0], outcome[1]);
    EXPECT_EQ(final_positions[0], final_positions[1]);
    EXPECT_EQ(end_state[0], end_state[1]);
  }
}

TEST(Walkers, SurvivorsSitOnBoundaryAndBoundaryStaysClean) {
  const PacketSpec spec({1, 1});
  int survived = 0;
  for (std::uint64_t i = 0; i < 500; ++i) {
    interx::LcgSteps steps{interx::spawn_stream(11, i)};
    DenseGrid grid(12, 2);
    grid.reset();
    auto e = interx::scatter_from_origin(spec, 6, steps);
    for (const Cell& c : e.positions) ASSERT_EQ(interx::max_norm(c), 6);
    if (interx::advance_level(e, 12, grid, steps) != LevelOutcome::survived) continue;
    ++survived;
    for (const Cell& c : e.positions) ASSERT_EQ(interx::max_norm(c), 12);
    for (int t = -12; t <= 12; ++t) {
      ASSERT_EQ(grid.mask_at({t, 12}), 0);
      ASSERT_EQ(grid.mask_at({t, -12}), 0);
      ASSERT_EQ(grid.mask_at({12, t}), 0);
      ASSERT_EQ(grid.mask_at({-12, t}), 0);
    }
  }
  EXPECT_GT(survived, 0);
}

// Directions of a walk from `start` until it leaves the open box of half-length l.
std::vector<unsigned> free_path(Cell start, int l, interx::RngStream rng, std::vector<Cell>& cells) {
  std::vector<unsigned> dirs;
  Cell p = start;
  while (interx::max_norm(p) < l) {
    const unsigned d = rng.step_direction();
    dirs.push_back(d);
    p.x += interx::kSteps[d].dx;
    p.y += interx::kSteps[d].dy;
    if (interx::max_norm(p) < l) cells.push_back(p);
  }
  return dirs;
}

struct Scenario {
  std::vector<Cell> starts;
  std::vector<std::vector<unsigned>> paths;
  std::vector<std::vector<Cell>> cells;  // interior cells after the start
};

LevelOutcome play(const PacketSpec& spec, const Scenario& s, const std::vector<std::size_t>& order,
                  const WalkOptions& options) {
  WalkerEnsemble e(spec);
  ScriptedSteps steps;
  for (std::size_t w = 0; w < order.size(); ++w) {
    e.positions[w] = s.starts[order[w]];
    for (unsigned d : s.paths[order[w]]) steps.then(d);
  }
  DenseGrid grid(8, spec.packets());
  grid.reset();
  return interx::advance_level(e, 8, grid, steps, options);
}

// Swapping walkers of one packet (with their own step scripts) keeps the
// verdict, and the verdict matches brute-force intersection of the traces.
TEST(WalkersProperty, PermutationWithinPacketAndOfflineAgreement) {
  interx::RngStream rng(4242);
  int hits = 0;
  for (int trial = 0; trial < 300; ++trial) {
    const PacketSpec spec = trial % 2 == 0 ? PacketSpec({1, 2}) : PacketSpec({2, 2});
    const auto packet_of = spec.packet_of_walkers();
    const std::size_t n = packet_of.size();
    WalkOptions options;
    options.record_entry_cell = (trial % 4) >= 2;

    Scenario s;
    for (std::size_t w = 0; w < n; ++w) {
      const Cell start{static_cast<int>(rng.next() % 11) - 5, static_cast<int>(rng.next() % 11) - 5};
      s.starts.push_back(start);
      s.cells.emplace_back();
      s.paths.push_back(free_path(start, 8, interx::RngStream(rng.next()), s.cells.back()));
    }

    std::vector<std::vector<Cell>> per_packet(spec.packets());
    for (std::size_t w = 0; w < n; ++w) {
      auto& cells = per_packet[packet_of[w]];
      if (options.record_entry_cell) cells.push_back(s.starts[w]);
      cells.insert(cells.end(), s.cells[w].begin(), s.cells[w].end());
    }
    const bool offline = interx::intersection_nonempty(per_packet);

    std::vector<std::size_t> identity(n);
    for (std::size_t w = 0; w < n; ++w) identity[w] = w;
    std::vector<std::size_t> swapped = identity;
    // Walkers are grouped by packet; reverse each packet's block.
    for (std::size_t b = 0; b < n;) {
      std::size_t e = b;
      while (e < n && packet_of[e] == packet_of[b]) ++e;
      std::reverse(swapped.begin() + static_cast<std::ptrdiff_t>(b),
                   swapped.begin() + static_cast<std::ptrdiff_t>(e));
      b = e;
    }

    const LevelOutcome a = play(spec, s, identity, options);
    const LevelOutcome b = play(spec, s, swapped, options);
    ASSERT_EQ(a, b) << "trial " << trial;
    ASSERT_EQ(a == LevelOutcome::intersected, offline) << "trial " << trial;
    hits += offline ? 1 : 0;
  }
  EXPECT_GT(hits, 30);
  EXPECT_LT(hits, 270);
}

// Exit distribution of a walk from the origin on the boundary of the L0 box,
// computed from the Green's function of the box by Gauss-Seidel.
std::map<std::pair<int, int>, double> harmonic_measure(int l) {
  const int side = 2 * l - 1;
  std::vector<double> g(static_cast<std::size_t>(side * side), 0.0);
  auto at = [&](int x, int y) -> double& {
    return g[static_cast<std::size_t>((y + l - 1) * side + (x + l - 1))];
  };
  auto interior = [&](int x, int y) { return std::max(std::abs(x), std::abs(y)) < l; };
  for (int sweep = 0; sweep < 20000; ++sweep) {
    double change = 0.0;
    for (int y = -l + 1; y < l; ++y) {
      for (int x = -l + 1; x < l; ++x) {
        double v = (x == 0 && y == 0) ? 1.0 : 0.0;
        for (const auto& s : interx::kSteps) {
          if (interior(x + s.dx, y + s.dy)) v += 0.25 * at(x + s.dx, y + s.dy);
        }
        change = std::max(change, std::abs(v - at(x, y)));
        at(x, y) = v;
      }
    }
    if (change < 1e-15) break;
  }
  std::map<std::pair<int, int>, double> exit;
  for (int y = -l + 1; y < l; ++y) {
    for (int x = -l + 1; x < l; ++x) {
      for (const auto& s : interx::kSteps) {
        if (!interior(x + s.dx, y + s.dy)) exit[{x + s.dx, y + s.dy}] += 0.25 * at(x, y);
      }
    }
  }
  return exit;
}

TEST(Walkers, ScatterFollowsHarmonicMeasure) {
  constexpr int l0 = 5;
  const auto expected = harmonic_measure(l0);
  ASSERT_EQ(expected.size(), 36U);  // corners are unreachable
  double total = 0.0;
  for (const auto& [cell, p] : expected) total += p;
  ASSERT_NEAR(total, 1.0, 1e-12);

  constexpr int samples = 200'000;
  std::map<std::pair<int, int>, int> observed;
  interx::LcgSteps steps{interx::spawn_stream(99, 0)};
  const PacketSpec spec({1, 1});
  for (int i = 0; i < samples / 2; ++i) {
    for (const Cell& c : interx::scatter_from_origin(spec, l0, steps).positions) {
      ASSERT_EQ(interx::max_norm(c), l0);
      ++observed[{c.x, c.y}];
    }
  }
  double chi2 = 0.0;
  for (const auto& [cell, p] : expected) {
    const double e = p * samples;
    const double d = observed[cell] - e;
    chi2 += d * d / e;
  }
  EXPECT_EQ(observed.size(), 36U);
  const boost::math::chi_squared dist(35);
  EXPECT_LT(chi2, boost::math::quantile(boost::math::complement(dist, 1e-3)));
}

// First transition of the published (1,1) table: 455164209 of 500000000
// samples survive from L=30 to L=33.
TEST(WalkersStatistics, FirstTransitionMatchesPublishedSurvival) {
  interx::MultilevelSetup setup{PacketSpec({1, 1}), interx::BoxSchedule::from_levels({30, 33}),
                                1'000'000, 1};
  const auto result = interx::run_campaign(setup);
  const double published = 455164209.0 / 500000000.0;
  const double observed = static_cast<double>(result.counts.n[1]) / 1e6;
  const double se = std::sqrt(published * (1.0 - published) / 1e6);
  EXPECT_LT(std::abs(observed - published), 3.0 * se)
      << "observed " << observed << " published " << published;
}

}  // namespace

#pragma once

#include <cassert>
#include <concepts>
#include <cstdint>
#include <vector>

#include "interx/lattice.hpp"
#include "interx/packet.hpp"
#include "interx/rng.hpp"

namespace interx {

/// Anything that yields lattice directions in [0, 4) (see kSteps).
template <class S>
concept StepSource = requires(S& s) {
  { s.next_direction() } -> std::convertible_to<unsigned>;
};

struct WalkOptions {
  /// Record each walker's position at the start of a level before it moves.
  /// Off by default: with it off, simulated survival fractions match the
  /// published (1,1) counts table; with it on the first transition is biased low.
  bool record_entry_cell = false;
  DirectionRule direction_rule = DirectionRule::top_bits;

  friend bool operator==(const WalkOptions&, const WalkOptions&) = default;
};

/// Positions of all walkers, grouped by packet.
struct WalkerEnsemble {
  std::vector<Cell> positions;
  std::vector<unsigned char> packet_of;

  explicit WalkerEnsemble(const PacketSpec& spec)
      : positions(static_cast<std::size_t>(spec.total_walkers())),
        packet_of(spec.packet_of_walkers()) {}

  [[nodiscard]] std::size_t size() const noexcept { return positions.size(); }
};

enum class LevelOutcome { survived, intersected };

/// Runs a walk from `start` until it first reaches max-norm `half_length`.
/// Nothing is recorded.
template <StepSource S>
Cell walk_to_boundary(Cell start, int half_length, S& steps) {
  Cell p = start;
  if (max_norm(p) >= half_length) return p;
  const auto width = static_cast<unsigned>(2 * half_length - 1);
  for (;;) {
    const Step s = kSteps[steps.next_direction()];
    p.x += s.dx;
    p.y += s.dy;
    const bool inside_x = static_cast<unsigned>(p.x + half_length - 1) < width;
    const bool inside_y = static_cast<unsigned>(p.y + half_length - 1) < width;
    if (!(inside_x & inside_y)) return p;
  }
}

/// Starts every walker at the origin and stops it on the boundary of the L0 box.
template <StepSource S>
WalkerEnsemble scatter_from_origin(const PacketSpec& spec, int l0, S& steps) {
  assert(l0 >= 1);
  WalkerEnsemble e(spec);
  for (auto& pos : e.positions) pos = walk_to_boundary(Cell{0, 0}, l0, steps);
  return e;
}

/// Moves every walker, one after the other, until it hits the boundary of the
/// box of half-length `half_length`, marking every interior cell it occupies.
/// Returns as soon as some cell carries all packet bits; walkers are then left
/// where they were.
template <class Grid, StepSource S>
LevelOutcome advance_level(WalkerEnsemble& ensemble, int half_length, Grid& grid, S& steps,
                           const WalkOptions& options = {}) {
  assert(half_length <= grid.half_length());
  const int l = half_length;
  grid.cover(l - 1);
  for (std::size_t w = 0; w < ensemble.size(); ++w) {
    Cell p = ensemble.positions[w];
    assert(max_norm(p) < l);
    const auto bit = static_cast<std::uint8_t>(1U << ensemble.packet_of[w]);
    auto cursor = grid.cursor_at(p);
    if (options.record_entry_cell && grid.mark(cursor, bit)) return LevelOutcome::intersected;
    const auto width = static_cast<unsigned>(2 * l - 1);
    for (;;) {
      const unsigned d = steps.next_direction();
      p.x += kSteps[d].dx;
      p.y += kSteps[d].dy;
      const bool inside_x = static_cast<unsigned>(p.x + l - 1) < width;
      const bool inside_y = static_cast<unsigned>(p.y + l - 1) < width;
      if (!(inside_x & inside_y)) break;
      grid.move(cursor, d);
      if (grid.mark(cursor, bit)) {
        ensemble.positions[w] = p;
        return LevelOutcome::intersected;
      }
    }
    ensemble.positions[w] = p;
  }
  return LevelOutcome::survived;
}

}  // namespace interx

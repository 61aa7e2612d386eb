#pragma once

#include <algorithm>
#include <cassert>
#include <cstddef>
#include <cstdint>
#include <cstdlib>
#include <span>
#include <unordered_map>
#include <vector>

#include "interx/packet.hpp"

namespace interx {

struct Cell {
  int x = 0;
  int y = 0;
  friend constexpr bool operator==(Cell, Cell) = default;
};

constexpr int max_norm(Cell c) noexcept { return std::max(std::abs(c.x), std::abs(c.y)); }

constexpr std::uint8_t full_mask_for(std::size_t packets) noexcept {
  return static_cast<std::uint8_t>((1U << packets) - 1U);
}

/// Dense occupancy grid over {-m..m}^2, one byte per cell with bit i set when
/// packet i visited the cell.
///
/// The grid remembers the max-norm radius of everything it has touched since
/// the last reset, and reset() only clears that square. A sample that dies in
/// a box of half-length L therefore costs O(L^2) to clear, which is the same
/// order as the walk that filled it.
class DenseGrid {
 public:
  using Cursor = std::size_t;

  /// Region copy used to freeze and restore a simulation state.
  struct Snapshot {
    int radius = -1;
    std::vector<std::uint8_t> bytes;
  };

  DenseGrid(int half_length, std::size_t packets);

  [[nodiscard]] int half_length() const noexcept { return m_; }
  [[nodiscard]] std::uint8_t full_mask() const noexcept { return full_; }
  [[nodiscard]] std::size_t memory_bytes() const noexcept { return cells_.size(); }
  [[nodiscard]] int touched_radius() const noexcept { return extent_; }

  [[nodiscard]] bool contains(Cell c) const noexcept { return max_norm(c) <= m_; }

  /// Sets the packet bit at `c`; true iff the cell became full by this call.
  /// Out-of-range cells are a contract violation.
  bool record_visit(Cell c, unsigned packet) {
    assert(contains(c) && packet < kMaxPackets);
    extent_ = std::max(extent_, max_norm(c));
    return mark(cursor_at(c), static_cast<std::uint8_t>(1U << packet));
  }

  [[nodiscard]] std::uint8_t mask_at(Cell c) const {
    assert(contains(c));
    return cells_[cursor_at(c)];
  }

  void reset() noexcept;

  // Walker fast path. Callers promise to stay within `cover(radius)`.
  void cover(int radius) noexcept { extent_ = std::max(extent_, radius); }
  [[nodiscard]] Cursor cursor_at(Cell c) const noexcept {
    return static_cast<std::size_t>(c.y + m_) * side_ + static_cast<std::size_t>(c.x + m_);
  }
  void move(Cursor& cur, unsigned dir) const noexcept { cur += delta_[dir]; }
  bool mark(Cursor cur, std::uint8_t bit) noexcept {
    std::uint8_t& cell = cells_[cur];
    const std::uint8_t before = cell;
    cell = static_cast<std::uint8_t>(before | bit);
    return cell == full_ && before != full_;
  }

  [[nodiscard]] Snapshot snapshot() const;
  /// Resets, then writes the snapshot back.
  void restore(const Snapshot& snap);

  /// Number of non-zero cells in the whole grid (test helper, O(m^2)).
  [[nodiscard]] std::size_t count_nonzero() const noexcept;

 private:
  int m_;
  std::size_t side_;
  std::uint8_t full_;
  int extent_ = -1;
  std::size_t delta_[4];
  std::vector<std::uint8_t> cells_;
};

/// Coordinate-keyed occupancy map for boxes too large to allocate densely.
/// Same contract as DenseGrid; memory grows with the number of visited cells.
class SparseGrid {
 public:
  using Cursor = Cell;

  struct Snapshot {
    std::vector<std::pair<std::uint64_t, std::uint8_t>> cells;
  };

  SparseGrid(int half_length, std::size_t packets);

  [[nodiscard]] int half_length() const noexcept { return m_; }
  [[nodiscard]] std::uint8_t full_mask() const noexcept { return full_; }
  [[nodiscard]] bool contains(Cell c) const noexcept { return max_norm(c) <= m_; }
  [[nodiscard]] int touched_radius() const noexcept { return extent_; }

  bool record_visit(Cell c, unsigned packet) {
    assert(contains(c) && packet < kMaxPackets);
    extent_ = std::max(extent_, max_norm(c));
    return mark(c, static_cast<std::uint8_t>(1U << packet));
  }
  [[nodiscard]] std::uint8_t mask_at(Cell c) const;

  void reset() noexcept {
    cells_.clear();
    extent_ = -1;
  }

  void cover(int radius) noexcept { extent_ = std::max(extent_, radius); }
  [[nodiscard]] Cursor cursor_at(Cell c) const noexcept { return c; }
  void move(Cursor& cur, unsigned dir) const noexcept;
  bool mark(Cursor cur, std::uint8_t bit) {
    std::uint8_t& cell = cells_[key(cur)];
    const std::uint8_t before = cell;
    cell = static_cast<std::uint8_t>(before | bit);
    return cell == full_ && before != full_;
  }

  [[nodiscard]] Snapshot snapshot() const;
  void restore(const Snapshot& snap);

  [[nodiscard]] std::size_t count_nonzero() const noexcept { return cells_.size(); }

 private:
  static std::uint64_t key(Cell c) noexcept {
    return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(c.x)) << 32) |
           static_cast<std::uint32_t>(c.y);
  }

  int m_;
  std::uint8_t full_;
  int extent_ = -1;
  std::unordered_map<std::uint64_t, std::uint8_t> cells_;
};

/// Brute-force check: does some cell lie in every one of the given sets?
bool intersection_nonempty(std::span<const std::vector<Cell>> visited_sets);

}  // namespace interx

#include "interx/lattice.hpp"

#include <cstring>
#include <set>
#include <utility>

#include "interx/error.hpp"

namespace interx {

namespace {

void check_grid_args(int half_length, std::size_t packets) {
  if (half_length < 1) throw ConfigError("grid half-length must be >= 1");
  if (packets < 2 || packets > kMaxPackets) throw ConfigError("grid supports 2..8 packets");
}

}  // namespace

DenseGrid::DenseGrid(int half_length, std::size_t packets)
    : m_(half_length),
      side_(2 * static_cast<std::size_t>(half_length) + 1),
      full_(full_mask_for(packets)) {
  check_grid_args(half_length, packets);
  delta_[0] = 1;
  delta_[1] = static_cast<std::size_t>(-1);
  delta_[2] = side_;
  delta_[3] = static_cast<std::size_t>(0) - side_;
  cells_.assign(side_ * side_, 0);
}

void DenseGrid::reset() noexcept {
  if (extent_ < 0) return;
  const int r = std::min(extent_, m_);
  const std::size_t width = 2 * static_cast<std::size_t>(r) + 1;
  for (int y = -r; y <= r; ++y) {
    std::memset(&cells_[cursor_at({-r, y})], 0, width);
  }
  extent_ = -1;
}

DenseGrid::Snapshot DenseGrid::snapshot() const {
  Snapshot snap;
  snap.radius = std::min(extent_, m_);
  if (snap.radius < 0) return snap;
  const int r = snap.radius;
  const std::size_t width = 2 * static_cast<std::size_t>(r) + 1;
  snap.bytes.resize(width * width);
  for (int y = -r; y <= r; ++y) {
    std::memcpy(&snap.bytes[static_cast<std::size_t>(y + r) * width], &cells_[cursor_at({-r, y})],
                width);
  }
  return snap;
}

void DenseGrid::restore(const Snapshot& snap) {
  reset();
  if (snap.radius < 0) return;
  const int r = snap.radius;
  if (r > m_) throw ConfigError("snapshot larger than grid");
  const std::size_t width = 2 * static_cast<std::size_t>(r) + 1;
  for (int y = -r; y <= r; ++y) {
    std::memcpy(&cells_[cursor_at({-r, y})], &snap.bytes[static_cast<std::size_t>(y + r) * width],
                width);
  }
  extent_ = r;
}

std::size_t DenseGrid::count_nonzero() const noexcept {
  std::size_t n = 0;
  for (auto b : cells_) n += b != 0;
  return n;
}

SparseGrid::SparseGrid(int half_length, std::size_t packets)
    : m_(half_length), full_(full_mask_for(packets)) {
  check_grid_args(half_length, packets);
}

std::uint8_t SparseGrid::mask_at(Cell c) const {
  auto it = cells_.find(key(c));
  return it == cells_.end() ? std::uint8_t{0} : it->second;
}

void SparseGrid::move(Cursor& cur, unsigned dir) const noexcept {
  static constexpr int dx[4] = {1, -1, 0, 0};
  static constexpr int dy[4] = {0, 0, 1, -1};
  cur.x += dx[dir];
  cur.y += dy[dir];
}

SparseGrid::Snapshot SparseGrid::snapshot() const {
  Snapshot snap;
  snap.cells.assign(cells_.begin(), cells_.end());
  return snap;
}

void SparseGrid::restore(const Snapshot& snap) {
  reset();
  cells_.reserve(snap.cells.size());
  for (const auto& [k, mask] : snap.cells) {
    cells_.emplace(k, mask);
    const Cell c{static_cast<int>(static_cast<std::int32_t>(k >> 32)),
                 static_cast<int>(static_cast<std::int32_t>(k & 0xffffffffU))};
    extent_ = std::max(extent_, max_norm(c));
  }
}

bool intersection_nonempty(std::span<const std::vector<Cell>> visited_sets) {
  if (visited_sets.size() < 2) throw ConfigError("intersection needs at least two sets");
  auto as_set = [](const std::vector<Cell>& cells) {
    std::set<std::pair<int, int>> s;
    for (Cell c : cells) s.emplace(c.x, c.y);
    return s;
  };
  std::set<std::pair<int, int>> common = as_set(visited_sets[0]);
  for (std::size_t i = 1; i < visited_sets.size() && !common.empty(); ++i) {
    const auto next = as_set(visited_sets[i]);
    std::set<std::pair<int, int>> kept;
    for (const auto& c : common) {
      if (next.contains(c)) kept.insert(c);
    }
    common = std::move(kept);
  }
  return !common.empty();
}

}  // namespace interx

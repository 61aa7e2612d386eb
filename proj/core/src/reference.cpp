#include "interx/reference.hpp"

#include <cmath>

namespace interx {

namespace {

const double kSqrt73 = std::sqrt(73.0);

struct TableRow {
  std::vector<int> counts;
  double low;
  double high;
  const char* expression;
};

// Rigorous column of the scheme-1 and scheme-2 result tables, as printed.
const std::vector<TableRow>& interval_table() {
  static const std::vector<TableRow> rows = {
      {{1, 1, 1}, 0.5, 1.25, "[1/2, 5/4]"},
      {{1, 1, 2}, 1.0, 1.25, "[1, 5/4]"},
      {{1, 1, 1, 1}, 0.25, 1.25, "[1/4, 5/4]"},
      {{1, 1, 1, 2}, 0.5, 1.25, "[1/2, 5/4]"},
      {{1, 1, 1, 1, 1}, 0.125, 1.25, "[1/8, 5/4]"},
      {{1, 3, 3}, 2.0, (13.0 + kSqrt73) / 8.0, "[2, (13+sqrt(73))/8]"},
      {{2, 2, 2}, 2.0, 35.0 / 12.0, "[2, 35/12]"},
      {{2, 2, 3}, 2.0, 35.0 / 12.0, "[2, 35/12]"},
      {{2, 3, 3}, 2.0, 35.0 / 12.0, "[2, 35/12]"},
      {{2, 2, 2, 2}, 2.0, 35.0 / 12.0, "[2, 35/12]"},
  };
  return rows;
}

bool same(const PacketSpec& spec, const std::vector<int>& counts) {
  return std::equal(spec.counts().begin(), spec.counts().end(), counts.begin(), counts.end());
}

ReferenceValue point(const PacketSpec& spec, double v, ReferenceStatus status,
                     const char* expression) {
  return ReferenceValue{spec, Interval{v, v}, status, expression};
}

}  // namespace

const char* to_string(ReferenceStatus s) noexcept {
  switch (s) {
    case ReferenceStatus::exact: return "exact";
    case ReferenceStatus::theorem2: return "theorem2";
    case ReferenceStatus::interval_bound: return "interval_bound";
  }
  return "unknown";
}

std::optional<ReferenceValue> exact_value(const PacketSpec& spec) {
  if (same(spec, {1, 1})) return point(spec, 1.25, ReferenceStatus::exact, "5/4");
  if (same(spec, {2, 2})) return point(spec, 35.0 / 12.0, ReferenceStatus::exact, "35/12");
  if (same(spec, {1, 3})) {
    return point(spec, (13.0 + kSqrt73) / 8.0, ReferenceStatus::exact, "(13+sqrt(73))/8");
  }
  if (same(spec, {2, 3})) {
    return point(spec, (47.0 + 5.0 * kSqrt73) / 24.0, ReferenceStatus::exact,
                 "(47+5*sqrt(73))/24");
  }
  const auto c = spec.counts();
  if (c[0] == 1 && c[1] == 2) {
    // Sorted order makes every later entry >= 2.
    return point(spec, 2.0, c.size() == 2 ? ReferenceStatus::exact : ReferenceStatus::theorem2,
                 "2");
  }
  return std::nullopt;
}

std::optional<ReferenceValue> rigorous_interval(const PacketSpec& spec) {
  if (auto exact = exact_value(spec)) return exact;
  for (const auto& row : interval_table()) {
    if (same(spec, row.counts)) {
      return ReferenceValue{spec, Interval{row.low, row.high}, ReferenceStatus::interval_bound,
                            row.expression};
    }
  }
  return std::nullopt;
}

PacketSpec conjectured_reduction(const PacketSpec& spec) {
  const auto c = spec.counts();
  const std::size_t p = c.size();
  std::size_t k = p;
  // 1-based l in {2, ..., p}; n_{p+1} does not exist.
  for (std::size_t l = 2; l < p; ++l) {
    if (c[l] > c[l - 1]) {
      k = l;
      break;
    }
  }
  return PacketSpec(std::vector<int>(c.begin(), c.begin() + static_cast<std::ptrdiff_t>(k)));
}

std::optional<PacketSpec> published_comparison(const PacketSpec& spec) {
  static const std::vector<std::pair<std::vector<int>, std::vector<int>>> pairs = {
      {{1, 1, 2}, {1, 1}},    {{1, 1, 1, 2}, {1, 1, 1}}, {{1, 3, 3}, {1, 3}},
      {{2, 2, 3}, {2, 2}},    {{2, 3, 3}, {2, 3}},
  };
  for (const auto& [from, to] : pairs) {
    if (same(spec, from)) return PacketSpec(to);
  }
  return std::nullopt;
}

ReductionNote reduction_note(const PacketSpec& spec) {
  ReductionNote note{conjectured_reduction(spec), published_comparison(spec), false};
  note.inconsistent = note.published.has_value() && !(*note.published == note.literal);
  return note;
}

}  // namespace interx

#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace interx {

/// Positive rational num/den, used for the box growth factor so that
/// floor(g * L) is computed exactly.
struct Rational {
  std::int64_t num = 11;
  std::int64_t den = 10;

  /// Parses "1.1", "11/10" or "2".
  static Rational parse(const std::string& text);
  [[nodiscard]] double to_double() const noexcept {
    return static_cast<double>(num) / static_cast<double>(den);
  }
  [[nodiscard]] std::string to_string() const;
  friend bool operator==(const Rational&, const Rational&) = default;
};

/// Strictly increasing box half-lengths L_0 < ... < L_K.
class BoxSchedule {
 public:
  /// L_{k+1} = max(floor(g L_k), L_k + 1), with the last level clamped to l_max.
  static BoxSchedule build(int l0, Rational growth, int l_max);

  /// Explicit levels, e.g. from an ingested table. Throws DataError unless
  /// strictly increasing and positive with at least two levels.
  static BoxSchedule from_levels(std::vector<int> levels);

  [[nodiscard]] const std::vector<int>& levels() const noexcept { return levels_; }
  [[nodiscard]] int level(std::size_t k) const { return levels_.at(k); }
  /// K, the index of the last level.
  [[nodiscard]] std::size_t last_index() const noexcept { return levels_.size() - 1; }
  [[nodiscard]] int final_length() const noexcept { return levels_.back(); }

  /// log(q_l) with q_l = L_l / L_{l+1}, rounded once from the exact ratio.
  [[nodiscard]] long double log_ratio(std::size_t l) const;

  /// Index of the level with half-length exactly `length`; throws ConfigError
  /// when absent.
  [[nodiscard]] std::size_t index_of(int length) const;
  /// Index of the level closest to `length` (ties go to the smaller level).
  [[nodiscard]] std::size_t nearest_index(int length) const noexcept;

  friend bool operator==(const BoxSchedule&, const BoxSchedule&) = default;

 private:
  explicit BoxSchedule(std::vector<int> levels) : levels_(std::move(levels)) {}
  std::vector<int> levels_;
};

}  // namespace interx

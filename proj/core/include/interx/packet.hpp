#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace interx {

inline constexpr std::size_t kMaxPackets = 8;

/// Packet sizes (n_1, ..., n_p) of an exponent argument, kept in canonical
/// nondecreasing order. p is limited to 8 by the one-byte occupancy mask.
class PacketSpec {
 public:
  /// Validates and sorts. Throws ConfigError when p < 2, p > 8 or some n_i < 1.
  explicit PacketSpec(std::vector<int> counts);

  /// Parses "1,1,2".
  static PacketSpec parse(const std::string& text);

  [[nodiscard]] std::size_t packets() const noexcept { return counts_.size(); }
  [[nodiscard]] int total_walkers() const noexcept { return total_; }
  [[nodiscard]] std::span<const int> counts() const noexcept { return counts_; }
  [[nodiscard]] int operator[](std::size_t i) const { return counts_[i]; }

  /// Packet index of every walker, walkers grouped by packet.
  [[nodiscard]] std::vector<unsigned char> packet_of_walkers() const;

  /// "1,1,2"
  [[nodiscard]] std::string to_string() const;

  friend bool operator==(const PacketSpec&, const PacketSpec&) = default;

 private:
  std::vector<int> counts_;
  int total_ = 0;
};

}  // namespace interx

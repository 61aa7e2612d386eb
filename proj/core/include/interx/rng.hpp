#pragma once

#include <cstdint>

namespace interx {

/// Lattice step on Z^2. Index order matches the direction draw: +x, -x, +y, -y.
struct Step {
  int dx;
  int dy;
};

inline constexpr Step kSteps[4] = {{1, 0}, {-1, 0}, {0, 1}, {0, -1}};

/// How a raw 64-bit LCG state is turned into one of four step directions.
enum class DirectionRule : std::uint8_t {
  top_bits,   ///< bits 63..62 (default)
  next_bits,  ///< bits 61..60; alternative extraction used for robustness runs
};

/// 64-bit linear congruential generator r' = a r + c (mod 2^64) with
/// a = 6364136223846793005 and c = 1.
///
/// A stream is plain mutable state owned by one thread at a time. Copying a
/// stream forks it: both copies produce the same sequence from then on.
class RngStream {
 public:
  static constexpr std::uint64_t kMultiplier = 6364136223846793005ULL;
  static constexpr std::uint64_t kIncrement = 1ULL;

  constexpr RngStream() noexcept = default;
  constexpr explicit RngStream(std::uint64_t state) noexcept : state_(state) {}

  [[nodiscard]] constexpr std::uint64_t state() const noexcept { return state_; }

  /// Advances once and returns the new state.
  constexpr std::uint64_t next() noexcept {
    state_ = kMultiplier * state_ + kIncrement;
    return state_;
  }

  /// Uniform double in [0, 1) from the top 53 bits of the new state.
  constexpr double unit_uniform() noexcept {
    return static_cast<double>(next() >> 11) * 0x1.0p-53;
  }

  /// Direction index in [0, 4); see kSteps for the mapping.
  constexpr unsigned step_direction() noexcept {
    return static_cast<unsigned>(next() >> 62);
  }

  constexpr unsigned step_direction(DirectionRule rule) noexcept {
    const std::uint64_t s = next();
    return rule == DirectionRule::top_bits ? static_cast<unsigned>(s >> 62)
                                           : static_cast<unsigned>((s >> 60) & 3U);
  }

  friend constexpr bool operator==(const RngStream&, const RngStream&) = default;

 private:
  std::uint64_t state_ = 0;
};

inline constexpr std::uint64_t kStreamMixer = 0x9E3779B97F4A7C15ULL;
inline constexpr int kStreamBurnIn = 8;

/// Independent, reproducible stream for work item `index` under `base_seed`.
constexpr RngStream spawn_stream(std::uint64_t base_seed, std::uint64_t index) noexcept {
  RngStream s(base_seed ^ (index * kStreamMixer));
  for (int i = 0; i < kStreamBurnIn; ++i) s.next();
  return s;
}

/// Step source backed by an LCG stream. Satisfies the StepSource concept used
/// by the walker dynamics.
struct LcgSteps {
  RngStream stream;
  DirectionRule rule = DirectionRule::top_bits;

  unsigned next_direction() noexcept {
    return rule == DirectionRule::top_bits ? stream.step_direction()
                                           : stream.step_direction(rule);
  }
};

}  // namespace interx

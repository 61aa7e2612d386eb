#pragma once

#include <optional>
#include <string>
#include <vector>

#include "interx/packet.hpp"

namespace interx {

enum class ReferenceStatus { exact, theorem2, interval_bound };

const char* to_string(ReferenceStatus s) noexcept;

struct Interval {
  double low = 0.0;
  double high = 0.0;
  [[nodiscard]] bool contains(double v) const noexcept { return low <= v && v <= high; }
  friend bool operator==(const Interval&, const Interval&) = default;
};

struct ReferenceValue {
  PacketSpec spec;
  Interval value;  // degenerate for exact values
  ReferenceStatus status;
  std::string expression;  // closed form as text, e.g. "35/12"
};

/// Known exact exponents: (1,1) = 5/4, (2,2) = 35/12, (1,3) = (13+sqrt73)/8,
/// (2,3) = (47+5 sqrt73)/24, and 2 for every (1,2,n_3,...,n_p) with n_i >= 2.
std::optional<ReferenceValue> exact_value(const PacketSpec& spec);

/// Rigorous bounds as tabulated for the simulated exponents, or the degenerate
/// interval of an exact value. nullopt when neither is known.
std::optional<ReferenceValue> rigorous_interval(const PacketSpec& spec);

/// Literal conjectured reduction: k = min{l in 2..p : n_{l+1} > n_l}, k = p if
/// no such l; returns (n_1, ..., n_k).
PacketSpec conjectured_reduction(const PacketSpec& spec);

/// The lower-order exponent a simulated spec was compared against in the
/// published discussion, where one was named.
std::optional<PacketSpec> published_comparison(const PacketSpec& spec);

struct ReductionNote {
  PacketSpec literal;
  std::optional<PacketSpec> published;
  /// True when the literal rule and the published comparison disagree.
  bool inconsistent = false;
};

ReductionNote reduction_note(const PacketSpec& spec);

}  // namespace interx

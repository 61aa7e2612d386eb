#include "interx/packet.hpp"

#include <algorithm>
#include <charconv>
#include <numeric>

#include "interx/error.hpp"

namespace interx {

const char* to_string(EstimationFailure kind) noexcept {
  switch (kind) {
    case EstimationFailure::no_deaths: return "no_deaths";
    case EstimationFailure::all_dead_immediately: return "all_dead_immediately";
    case EstimationFailure::insufficient_data: return "insufficient_data";
    case EstimationFailure::all_trials_dead: return "all_trials_dead";
    case EstimationFailure::non_convergence: return "non_convergence";
  }
  return "unknown";
}

PacketSpec::PacketSpec(std::vector<int> counts) : counts_(std::move(counts)) {
  if (counts_.size() < 2) {
    throw ConfigError("packet spec needs p >= 2 packets, got " + std::to_string(counts_.size()));
  }
  if (counts_.size() > kMaxPackets) {
    throw ConfigError("packet spec supports at most 8 packets, got " +
                      std::to_string(counts_.size()));
  }
  for (int n : counts_) {
    if (n < 1) throw ConfigError("packet size must be >= 1, got " + std::to_string(n));
  }
  std::sort(counts_.begin(), counts_.end());
  total_ = std::accumulate(counts_.begin(), counts_.end(), 0);
}

PacketSpec PacketSpec::parse(const std::string& text) {
  std::vector<int> counts;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find(',', pos);
    if (end == std::string::npos) end = text.size();
    const char* first = text.data() + pos;
    const char* last = text.data() + end;
    int value = 0;
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc{} || ptr != last || first == last) {
      throw ConfigError("invalid packet list '" + text + "'");
    }
    counts.push_back(value);
    pos = end + 1;
  }
  return PacketSpec(std::move(counts));
}

std::vector<unsigned char> PacketSpec::packet_of_walkers() const {
  std::vector<unsigned char> out;
  out.reserve(static_cast<std::size_t>(total_));
  for (std::size_t i = 0; i < counts_.size(); ++i) {
    out.insert(out.end(), static_cast<std::size_t>(counts_[i]), static_cast<unsigned char>(i));
  }
  return out;
}

std::string PacketSpec::to_string() const {
  std::string s;
  for (std::size_t i = 0; i < counts_.size(); ++i) {
    if (i) s += ',';
    s += std::to_string(counts_[i]);
  }
  return s;
}

}  // namespace interx

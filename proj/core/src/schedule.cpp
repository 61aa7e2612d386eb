#include "interx/schedule.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <numeric>

#include "interx/error.hpp"

namespace interx {

namespace {

std::int64_t parse_int(std::string_view s, const std::string& whole) {
  std::int64_t v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size() || s.empty()) {
    throw ConfigError("invalid rational '" + whole + "'");
  }
  return v;
}

}  // namespace

Rational Rational::parse(const std::string& text) {
  Rational r;
  if (auto slash = text.find('/'); slash != std::string::npos) {
    r.num = parse_int(std::string_view(text).substr(0, slash), text);
    r.den = parse_int(std::string_view(text).substr(slash + 1), text);
  } else if (auto dot = text.find('.'); dot != std::string::npos) {
    const std::string digits = text.substr(0, dot) + text.substr(dot + 1);
    const std::size_t frac = text.size() - dot - 1;
    if (frac > 12) throw ConfigError("too many decimals in '" + text + "'");
    r.num = parse_int(digits, text);
    r.den = 1;
    for (std::size_t i = 0; i < frac; ++i) r.den *= 10;
  } else {
    r.num = parse_int(text, text);
    r.den = 1;
  }
  if (r.den <= 0 || r.num <= 0) throw ConfigError("rational must be positive: '" + text + "'");
  const std::int64_t g = std::gcd(r.num, r.den);
  r.num /= g;
  r.den /= g;
  return r;
}

std::string Rational::to_string() const {
  return std::to_string(num) + "/" + std::to_string(den);
}

BoxSchedule BoxSchedule::build(int l0, Rational growth, int l_max) {
  if (l0 < 2) throw ConfigError("L0 must be >= 2, got " + std::to_string(l0));
  if (l0 >= l_max) {
    throw ConfigError("L0 (" + std::to_string(l0) + ") must be smaller than Lmax (" +
                      std::to_string(l_max) + ")");
  }
  if (growth.den <= 0 || growth.num <= growth.den) {
    throw ConfigError("growth factor must exceed 1, got " + growth.to_string());
  }
  std::vector<int> levels{l0};
  while (levels.back() < l_max) {
    const std::int64_t cur = levels.back();
    const std::int64_t grown = cur * growth.num / growth.den;
    const std::int64_t next = std::max(grown, cur + 1);
    levels.push_back(static_cast<int>(std::min<std::int64_t>(next, l_max)));
  }
  return BoxSchedule(std::move(levels));
}

BoxSchedule BoxSchedule::from_levels(std::vector<int> levels) {
  if (levels.size() < 2) throw DataError("schedule needs at least two levels");
  if (levels.front() < 1) throw DataError("box half-lengths must be positive");
  for (std::size_t k = 1; k < levels.size(); ++k) {
    if (levels[k] <= levels[k - 1]) {
      throw DataError("box half-lengths must be strictly increasing (level " + std::to_string(k) +
                      ": " + std::to_string(levels[k]) + ")");
    }
  }
  return BoxSchedule(std::move(levels));
}

long double BoxSchedule::log_ratio(std::size_t l) const {
  const long double q = static_cast<long double>(levels_.at(l)) /
                        static_cast<long double>(levels_.at(l + 1));
  return std::log(q);
}

std::size_t BoxSchedule::index_of(int length) const {
  auto it = std::find(levels_.begin(), levels_.end(), length);
  if (it == levels_.end()) {
    throw ConfigError("no level with half-length " + std::to_string(length));
  }
  return static_cast<std::size_t>(it - levels_.begin());
}

std::size_t BoxSchedule::nearest_index(int length) const noexcept {
  std::size_t best = 0;
  for (std::size_t k = 1; k < levels_.size(); ++k) {
    if (std::abs(levels_[k] - length) < std::abs(levels_[best] - length)) best = k;
  }
  return best;
}

}  // namespace interx

#pragma once

#include <cstdint>
#include <cstring>
#include <string>
#include <string_view>
#include <type_traits>

namespace interx {

/// FNV-1a 64-bit content hash. Used for config digests, report input digests
/// and checkpoint checksums; not a cryptographic hash.
class Fnv1a {
 public:
  Fnv1a& bytes(const void* data, std::size_t n) noexcept {
    const auto* p = static_cast<const unsigned char*>(data);
    for (std::size_t i = 0; i < n; ++i) {
      h_ ^= p[i];
      h_ *= 0x100000001b3ULL;
    }
    return *this;
  }
  Fnv1a& text(std::string_view s) noexcept { return bytes(s.data(), s.size()); }

  /// Integers are hashed as little-endian 64-bit values regardless of type.
  template <class T>
    requires std::is_integral_v<T>
  Fnv1a& value(T v) noexcept {
    auto u = static_cast<std::uint64_t>(v);
    unsigned char buf[8];
    for (int i = 0; i < 8; ++i) buf[i] = static_cast<unsigned char>(u >> (8 * i));
    return bytes(buf, 8);
  }

  [[nodiscard]] std::uint64_t digest() const noexcept { return h_; }

 private:
  std::uint64_t h_ = 0xcbf29ce484222325ULL;
};

std::string to_hex(std::uint64_t v);

}  // namespace interx

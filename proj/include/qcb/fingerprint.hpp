#pragma once

#include <bit>
#include <cstdint>
#include <span>
#include <string_view>

namespace qcb {

/// FNV-1a over the exact bytes of fitted state. Two fits with bit-identical
/// state produce the same value.
class Fingerprint {
 public:
  Fingerprint& add(std::uint64_t v) noexcept {
    for (int k = 0; k < 8; ++k) {
      h_ ^= (v >> (8 * k)) & 0xFFU;
      h_ *= 0x100000001B3ULL;
    }
    return *this;
  }
  Fingerprint& add(double v) noexcept { return add(std::bit_cast<std::uint64_t>(v)); }
  Fingerprint& add(int v) noexcept { return add(static_cast<std::uint64_t>(static_cast<std::int64_t>(v))); }
  Fingerprint& add(bool v) noexcept { return add(static_cast<std::uint64_t>(v)); }
  Fingerprint& add(std::string_view s) noexcept {
    for (char c : s) add(static_cast<std::uint64_t>(static_cast<unsigned char>(c)));
    return *this;
  }
  Fingerprint& add(const char* s) noexcept { return add(std::string_view(s)); }
  template <class T>
  Fingerprint& add(std::span<const T> v) noexcept {
    add(v.size());
    for (const auto& x : v) add(x);
    return *this;
  }

  std::uint64_t value() const noexcept { return h_; }

 private:
  std::uint64_t h_ = 0xCBF29CE484222325ULL;
};

}  // namespace qcb

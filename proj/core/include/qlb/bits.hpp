#pragma once

#include <cstdint>
#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace qlb {

/// Packed bit string with MSB-first bit order inside each byte.
///
/// Position 0 is the most significant bit of the first byte, matching the
/// wire convention used by the canonical transaction serialization and the
/// Toeplitz test vectors.
class BitString {
 public:
  BitString() = default;
  explicit BitString(size_t n) : bits_((n + 63) / 64, 0), size_(n) {}

  static BitString from_bytes(std::span<const uint8_t> bytes);
  static BitString from_hex(std::string_view hex, size_t bit_count);
  /// Parses a string of '0'/'1' characters; anything else throws.
  static BitString from_binary_text(std::string_view text);

  size_t size() const { return size_; }
  bool empty() const { return size_ == 0; }

  bool get(size_t i) const {
    return (bits_[i >> 6] >> (63 - (i & 63))) & 1u;
  }
  void set(size_t i, bool v) {
    uint64_t mask = uint64_t{1} << (63 - (i & 63));
    if (v)
      bits_[i >> 6] |= mask;
    else
      bits_[i >> 6] &= ~mask;
  }
  void push_back(bool v);
  void append(const BitString& other);

  BitString& operator^=(const BitString& rhs);
  friend BitString operator^(BitString a, const BitString& b) {
    a ^= b;
    return a;
  }
  bool operator==(const BitString& rhs) const;

  /// Dot product over GF(2) against an equally long bit string.
  bool dot(const BitString& rhs) const;

  /// Hex of the underlying bytes, zero padded to a whole byte.
  std::string to_hex() const;
  std::string to_binary_text() const;
  std::vector<uint8_t> to_bytes() const;

  std::span<const uint64_t> words() const { return bits_; }

 private:
  void clear_tail();
  std::vector<uint64_t> bits_;
  size_t size_ = 0;
};

}  // namespace qlb

#include "qlb/bits.hpp"

#include <bit>
#include <stdexcept>

namespace qlb {

namespace {

int hex_digit(char c) {
  if (c >= '0' && c <= '9') return c - '0';
  if (c >= 'a' && c <= 'f') return c - 'a' + 10;
  if (c >= 'A' && c <= 'F') return c - 'A' + 10;
  throw std::invalid_argument("invalid hex digit");
}

}  // namespace

BitString BitString::from_bytes(std::span<const uint8_t> bytes) {
  BitString out(bytes.size() * 8);
  for (size_t i = 0; i < bytes.size(); ++i) {
    uint64_t b = bytes[i];
    out.bits_[i / 8] |= b << (56 - 8 * (i % 8));
  }
  return out;
}

BitString BitString::from_hex(std::string_view hex, size_t bit_count) {
  if (hex.size() % 2 != 0)
    throw std::invalid_argument("hex string must have even length");
  std::vector<uint8_t> bytes;
  bytes.reserve(hex.size() / 2);
  for (size_t i = 0; i < hex.size(); i += 2)
    bytes.push_back(static_cast<uint8_t>(hex_digit(hex[i]) * 16 + hex_digit(hex[i + 1])));
  if (bit_count > bytes.size() * 8)
    throw std::invalid_argument("bit_count exceeds hex payload");
  BitString out = from_bytes(bytes);
  out.size_ = bit_count;
  out.bits_.resize((bit_count + 63) / 64);
  out.clear_tail();
  return out;
}

BitString BitString::from_binary_text(std::string_view text) {
  BitString out;
  for (char c : text) {
    if (c != '0' && c != '1')
      throw std::invalid_argument("binary text must contain only 0/1");
    out.push_back(c == '1');
  }
  return out;
}

void BitString::push_back(bool v) {
  if (size_ % 64 == 0) bits_.push_back(0);
  ++size_;
  set(size_ - 1, v);
}

void BitString::append(const BitString& other) {
  for (size_t i = 0; i < other.size_; ++i) push_back(other.get(i));
}

BitString& BitString::operator^=(const BitString& rhs) {
  if (size_ != rhs.size_)
    throw std::invalid_argument("BitString xor: size mismatch");
  for (size_t i = 0; i < bits_.size(); ++i) bits_[i] ^= rhs.bits_[i];
  return *this;
}

bool BitString::operator==(const BitString& rhs) const {
  return size_ == rhs.size_ && bits_ == rhs.bits_;
}

bool BitString::dot(const BitString& rhs) const {
  if (size_ != rhs.size_)
    throw std::invalid_argument("BitString dot: size mismatch");
  uint64_t acc = 0;
  for (size_t i = 0; i < bits_.size(); ++i) acc ^= bits_[i] & rhs.bits_[i];
  return std::popcount(acc) & 1;
}

std::string BitString::to_hex() const {
  static const char* digits = "0123456789abcdef";
  std::vector<uint8_t> bytes = to_bytes();
  std::string out;
  out.reserve(bytes.size() * 2);
  for (uint8_t b : bytes) {
    out.push_back(digits[b >> 4]);
    out.push_back(digits[b & 15]);
  }
  return out;
}

std::string BitString::to_binary_text() const {
  std::string out;
  out.reserve(size_);
  for (size_t i = 0; i < size_; ++i) out.push_back(get(i) ? '1' : '0');
  return out;
}

std::vector<uint8_t> BitString::to_bytes() const {
  std::vector<uint8_t> out((size_ + 7) / 8, 0);
  for (size_t i = 0; i < out.size(); ++i)
    out[i] = static_cast<uint8_t>(bits_[i / 8] >> (56 - 8 * (i % 8)));
  return out;
}

void BitString::clear_tail() {
  size_t used = size_ % 64;
  if (used != 0 && !bits_.empty())
    bits_.back() &= ~uint64_t{0} << (64 - used);
}

}  // namespace qlb

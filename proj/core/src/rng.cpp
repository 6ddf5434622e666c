#include "qlb/rng.hpp"

#include <stdexcept>

namespace qlb {

uint64_t Rng::mix(uint64_t x) {
  // splitmix64 finalizer
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

uint64_t Rng::hash_label(std::string_view label) {
  // FNV-1a 64
  uint64_t h = 0xcbf29ce484222325ull;
  for (char c : label) {
    h ^= static_cast<uint8_t>(c);
    h *= 0x100000001b3ull;
  }
  return h;
}

uint64_t Rng::bounded(uint64_t n) {
  if (n == 0) throw std::invalid_argument("Rng::bounded: n must be positive");
  // Rejection sampling below the largest multiple of n; bias-free.
  uint64_t max_multiple = (~uint64_t{0} / n) * n;
  uint64_t x;
  do {
    x = next_u64();
  } while (x >= max_multiple);
  return x % n;
}

Rng Rng::child(std::string_view label) const {
  return Rng(mix(seed_ ^ hash_label(label)));
}

Rng Rng::child(std::string_view label, uint64_t index) const {
  return Rng(mix(mix(seed_ ^ hash_label(label)) + index));
}

}  // namespace qlb

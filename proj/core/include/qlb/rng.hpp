#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <string_view>

namespace qlb {

/// Deterministic random stream with portable derived distributions.
///
/// mt19937_64 raw output is bit-identical everywhere, but the standard
/// distribution adaptors are not; the bounded/uniform mappings below are
/// pinned so that reports are byte-identical across toolchains. Named
/// sub-streams are derived by hashing a label into the parent seed, so
/// adding one consumer does not perturb any other stream.
class Rng {
 public:
  explicit Rng(uint64_t seed) : engine_(mix(seed)), seed_(seed) {}

  uint64_t next_u64() { return engine_(); }

  /// Uniform integer in [0, n). n must be positive.
  uint64_t bounded(uint64_t n);

  /// Uniform double in [0, 1) with 53 random bits.
  double uniform01() { return (next_u64() >> 11) * 0x1.0p-53; }

  bool coin() { return next_u64() >> 63; }

  /// Child stream addressed by label; independent of draws made here.
  Rng child(std::string_view label) const;
  Rng child(std::string_view label, uint64_t index) const;

  uint64_t seed() const { return seed_; }

  static uint64_t mix(uint64_t x);
  static uint64_t hash_label(std::string_view label);

 private:
  std::mt19937_64 engine_;
  uint64_t seed_;
};

}  // namespace qlb

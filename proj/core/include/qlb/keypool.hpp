#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <string>
#include <utility>

#include "qlb/bits.hpp"

namespace qlb::crypto {

using NodeId = uint32_t;

/// Pairwise one-time key material, modeled as an unbounded deterministic
/// bit stream shared by the two endpoints. Both sides derive the identical
/// stream from (pair, seed), and each side advances its own cursor; bits
/// are never handed out twice by the same pool instance.
class KeyPool {
 public:
  KeyPool() = default;
  KeyPool(NodeId a, NodeId b, uint64_t seed);

  /// Next `count` bits of the shared stream, advancing the cursor.
  BitString draw(size_t count);

  /// Stream bits at an absolute offset, without touching the cursor.
  /// Used by verifiers replaying a counterparty's consumption range.
  BitString read_at(uint64_t offset, size_t count) const;

  /// Marks everything below `offset` as consumed. A verifier calls this
  /// after replaying a range so the same key material cannot verify twice.
  void advance_to(uint64_t offset) { cursor_ = std::max(cursor_, offset); }

  uint64_t cursor() const { return cursor_; }
  std::pair<NodeId, NodeId> pair() const { return {a_, b_}; }

 private:
  uint64_t block(uint64_t index) const;
  NodeId a_ = 0, b_ = 0;
  uint64_t stream_seed_ = 0;
  uint64_t cursor_ = 0;
};

/// One node's collection of pairwise pools. Two directories built from the
/// same root seed derive identical streams for the same unordered pair.
class KeyPoolDirectory {
 public:
  KeyPoolDirectory() = default;
  KeyPoolDirectory(NodeId owner, uint64_t root_seed)
      : owner_(owner), root_seed_(root_seed) {}

  KeyPool& with(NodeId peer);
  NodeId owner() const { return owner_; }

 private:
  NodeId owner_ = 0;
  uint64_t root_seed_ = 0;
  std::map<NodeId, KeyPool> pools_;
};

}  // namespace qlb::crypto

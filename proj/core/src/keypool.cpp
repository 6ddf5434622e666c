#include "qlb/keypool.hpp"

#include <algorithm>

#include "qlb/rng.hpp"

namespace qlb::crypto {

KeyPool::KeyPool(NodeId a, NodeId b, uint64_t seed) : a_(a), b_(b) {
  // Both endpoints must derive the same stream, so seed with the
  // order-independent pair.
  uint64_t lo = std::min(a, b), hi = std::max(a, b);
  stream_seed_ = Rng::mix(seed ^ Rng::mix((lo << 32) | hi));
}

uint64_t KeyPool::block(uint64_t index) const {
  // Counter-based expansion: bit i lives in block i/64 and depends only on
  // (stream_seed, i), so draw boundaries never change the stream.
  return Rng::mix(stream_seed_ + 0x9e3779b97f4a7c15ull * (index + 1));
}

BitString KeyPool::read_at(uint64_t offset, size_t count) const {
  BitString out(count);
  for (size_t i = 0; i < count; ++i) {
    uint64_t pos = offset + i;
    bool bit = (block(pos >> 6) >> (63 - (pos & 63))) & 1u;
    out.set(i, bit);
  }
  return out;
}

BitString KeyPool::draw(size_t count) {
  BitString out = read_at(cursor_, count);
  cursor_ += count;
  return out;
}

KeyPool& KeyPoolDirectory::with(NodeId peer) {
  auto it = pools_.find(peer);
  if (it == pools_.end())
    it = pools_.emplace(peer, KeyPool(owner_, peer, root_seed_)).first;
  return it->second;
}

}  // namespace qlb::crypto

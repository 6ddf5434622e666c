#include "qlb/toeplitz.hpp"

#include <stdexcept>

namespace qlb::crypto {

ToeplitzSpec draw_toeplitz_spec(KeyPool& pool, size_t digest_len, size_t msg_len) {
  ToeplitzSpec spec;
  spec.digest_len = digest_len;
  spec.msg_len = msg_len;
  spec.seed = pool.draw(digest_len + msg_len - 1);
  spec.pad = pool.draw(digest_len);
  return spec;
}

ToeplitzSpec toeplitz_spec_at(const KeyPool& pool, uint64_t offset,
                              size_t digest_len, size_t msg_len) {
  ToeplitzSpec spec;
  spec.digest_len = digest_len;
  spec.msg_len = msg_len;
  spec.seed = pool.read_at(offset, digest_len + msg_len - 1);
  spec.pad = pool.read_at(offset + digest_len + msg_len - 1, digest_len);
  return spec;
}

BitString toeplitz_hash(const ToeplitzSpec& spec, const BitString& msg) {
  if (!spec.well_formed())
    throw std::invalid_argument("toeplitz_hash: malformed spec");
  if (msg.size() != spec.msg_len)
    throw std::invalid_argument("toeplitz_hash: message length mismatch");

  BitString digest(spec.digest_len);
  // Row i of T is the S-window [i, i + msg_len) reversed; rather than
  // materializing the matrix, take the GF(2) dot product of msg with that
  // window bit-by-bit. Sizes here are small (a few thousand bits), so the
  // simple loop is plenty.
  for (size_t i = 0; i < spec.digest_len; ++i) {
    bool acc = spec.pad.get(i);
    for (size_t j = 0; j < spec.msg_len; ++j) {
      // T[i][j] = S[i - j + msg_len - 1]
      if (msg.get(j) && spec.seed.get(i + spec.msg_len - 1 - j)) acc = !acc;
    }
    digest.set(i, acc);
  }
  return digest;
}

}  // namespace qlb::crypto

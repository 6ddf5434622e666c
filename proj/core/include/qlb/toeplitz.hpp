#pragma once

#include <cstddef>

#include "qlb/bits.hpp"
#include "qlb/keypool.hpp"

namespace qlb::crypto {

/// One-time keyed Toeplitz authenticator: digest = T_S * msg + r over GF(2).
///
/// T_S is the digest_len x msg_len Toeplitz matrix whose entries are
/// T[i][j] = S[i - j + msg_len - 1], i.e. the first row is S[msg_len-1..0]
/// read right-to-left and the first column continues upward through
/// S[msg_len-1..msg_len+digest_len-2]. |S| = digest_len + msg_len - 1 and
/// |r| = digest_len.
struct ToeplitzSpec {
  BitString seed;  // S
  BitString pad;   // r
  size_t digest_len = 0;
  size_t msg_len = 0;

  bool well_formed() const {
    return seed.size() == digest_len + msg_len - 1 && pad.size() == digest_len &&
           digest_len > 0 && msg_len > 0;
  }
};

/// Draws a fresh one-time (S, r) for a message of msg_len bits from the
/// pair's pool, consuming |S| + |r| bits in that order.
ToeplitzSpec draw_toeplitz_spec(KeyPool& pool, size_t digest_len, size_t msg_len);

/// Same key material read at an absolute pool offset (verifier side).
ToeplitzSpec toeplitz_spec_at(const KeyPool& pool, uint64_t offset,
                              size_t digest_len, size_t msg_len);

/// Throws std::invalid_argument if |msg| != spec.msg_len.
BitString toeplitz_hash(const ToeplitzSpec& spec, const BitString& msg);

}  // namespace qlb::crypto

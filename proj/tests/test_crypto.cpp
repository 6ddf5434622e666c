#include <doctest.h>

#include <fstream>
#include <sstream>
#include <vector>

#include "qlb/bits.hpp"
#include "qlb/keypool.hpp"
#include "qlb/rng.hpp"
#include "qlb/toeplitz.hpp"

using namespace qlb;
using namespace qlb::crypto;

namespace {

// Dense-matrix oracle, independent of the windowed implementation: builds
// T explicitly from S and takes mod-2 dot products row by row.
BitString dense_toeplitz_oracle(const ToeplitzSpec& spec, const BitString& msg) {
  std::vector<std::vector<uint8_t>> T(spec.digest_len,
                                      std::vector<uint8_t>(spec.msg_len));
  for (size_t i = 0; i < spec.digest_len; ++i)
    for (size_t j = 0; j < spec.msg_len; ++j)
      T[i][j] = spec.seed.get(i - j + spec.msg_len - 1) ? 1 : 0;
  BitString out(spec.digest_len);
  for (size_t i = 0; i < spec.digest_len; ++i) {
    uint8_t acc = spec.pad.get(i) ? 1 : 0;
    for (size_t j = 0; j < spec.msg_len; ++j)
      acc ^= T[i][j] & (msg.get(j) ? 1 : 0);
    out.set(i, acc);
  }
  return out;
}

BitString random_bits(size_t n, Rng& rng) {
  BitString out(n);
  for (size_t i = 0; i < n; ++i) out.set(i, rng.coin());
  return out;
}

}  // namespace

TEST_CASE("key pools: both endpoints derive identical streams") {
  KeyPool a(3, 9, 777), b(9, 3, 777);
  CHECK(a.draw(128) == b.draw(128));
  CHECK(a.draw(0).size() == 0);
}

TEST_CASE("key pool draws are boundary-independent") {
  KeyPool a(1, 2, 42), b(1, 2, 42);
  BitString first = a.draw(64);
  first.append(a.draw(64));
  CHECK(first == b.draw(128));
  // Cursor advances monotonically; read_at leaves it alone.
  uint64_t cur = b.cursor();
  (void)b.read_at(0, 32);
  CHECK(b.cursor() == cur);
}

TEST_CASE("different pairs and seeds give different streams") {
  KeyPool a(1, 2, 42), b(1, 3, 42), c(1, 2, 43);
  BitString sa = a.draw(128), sb = b.draw(128), sc = c.draw(128);
  CHECK_FALSE(sa == sb);
  CHECK_FALSE(sa == sc);
}

TEST_CASE("directory pools are shared per unordered pair") {
  KeyPoolDirectory alice(1, 11), bob(2, 11);
  CHECK(alice.with(2).draw(256) == bob.with(1).draw(256));
}

TEST_CASE("toeplitz: all-zero message returns the pad") {
  Rng rng(1);
  KeyPool pool(1, 2, 5);
  auto spec = draw_toeplitz_spec(pool, 32, 64);
  BitString zeros(64);
  CHECK(toeplitz_hash(spec, zeros) == spec.pad);
}

TEST_CASE("toeplitz: linearity over GF(2) with the pad stripped") {
  Rng rng(2);
  KeyPool pool(1, 2, 6);
  auto spec = draw_toeplitz_spec(pool, 32, 80);
  for (int trial = 0; trial < 1000; ++trial) {
    BitString a = random_bits(80, rng), b = random_bits(80, rng);
    BitString ha = toeplitz_hash(spec, a) ^ spec.pad;
    BitString hb = toeplitz_hash(spec, b) ^ spec.pad;
    BitString hab = toeplitz_hash(spec, a ^ b) ^ spec.pad;
    CHECK((ha ^ hb) == hab);
  }
}

TEST_CASE("toeplitz matches the dense-matrix oracle") {
  Rng rng(3);
  for (int trial = 0; trial < 50; ++trial) {
    size_t digest_len = 8 + rng.bounded(120);
    size_t msg_len = 1 + rng.bounded(200);
    KeyPool pool(4, 5, 1000 + trial);
    auto spec = draw_toeplitz_spec(pool, digest_len, msg_len);
    BitString msg = random_bits(msg_len, rng);
    CHECK(toeplitz_hash(spec, msg) == dense_toeplitz_oracle(spec, msg));
  }
}

TEST_CASE("toeplitz: length mismatch is rejected") {
  KeyPool pool(1, 2, 7);
  auto spec = draw_toeplitz_spec(pool, 16, 32);
  CHECK_THROWS_AS((void)toeplitz_hash(spec, BitString(31)), std::invalid_argument);
}

TEST_CASE("toeplitz fixture vectors") {
  std::ifstream in(QLB_FIXTURE_DIR "/toeplitz_vectors.txt");
  REQUIRE(in.good());
  std::string line;
  int checked = 0;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::istringstream fields(line);
    std::string s_hex, r_hex, msg_hex, digest_hex;
    size_t digest_bits, msg_bits;
    fields >> s_hex >> r_hex >> msg_hex >> digest_hex >> digest_bits >> msg_bits;
    ToeplitzSpec spec;
    spec.digest_len = digest_bits;
    spec.msg_len = msg_bits;
    spec.seed = BitString::from_hex(s_hex, digest_bits + msg_bits - 1);
    spec.pad = BitString::from_hex(r_hex, digest_bits);
    BitString msg = BitString::from_hex(msg_hex, msg_bits);
    BitString want = BitString::from_hex(digest_hex, digest_bits);
    CHECK(toeplitz_hash(spec, msg) == want);
    ++checked;
  }
  CHECK(checked == 6);
}

TEST_CASE("identity-window seed makes the digest msg xor pad") {
  // S has a single 1 at index msg_len-1, so T is the 8x8 identity.
  ToeplitzSpec spec;
  spec.digest_len = 8;
  spec.msg_len = 8;
  spec.seed = BitString::from_binary_text("000000010000000");
  spec.pad = BitString::from_binary_text("10101010");
  BitString msg = BitString::from_binary_text("11001011");
  CHECK(toeplitz_hash(spec, msg) == (msg ^ spec.pad));
}

TEST_CASE("forgery resistance at desk scale: digest 32, random guesses") {
  // Unknown (S, r); an adversary submits random (msg, digest) pairs.
  Rng rng(20260810);
  KeyPool pool(1, 2, 0xdeadbeef);
  auto spec = draw_toeplitz_spec(pool, 32, 64);
  int successes = 0;
  for (int trial = 0; trial < 10000; ++trial) {
    BitString msg = random_bits(64, rng);
    BitString guess = random_bits(32, rng);
    if (toeplitz_hash(spec, msg) == guess) ++successes;
  }
  CHECK(successes == 0);
}

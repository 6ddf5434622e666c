#include <doctest.h>

#include <set>
#include <stdexcept>

#include "qlb/bits.hpp"
#include "qlb/rng.hpp"

using qlb::BitString;
using qlb::Rng;

TEST_CASE("bit order is MSB-first within bytes") {
  BitString b = BitString::from_hex("a1", 8);  // 1010 0001
  CHECK(b.get(0));
  CHECK_FALSE(b.get(1));
  CHECK(b.get(2));
  CHECK_FALSE(b.get(3));
  CHECK(b.get(7));
  CHECK(b.to_hex() == "a1");
  CHECK(b.to_binary_text() == "10100001");
}

TEST_CASE("append and xor round-trip") {
  BitString a = BitString::from_binary_text("10110");
  BitString b = BitString::from_binary_text("01111");
  BitString x = a ^ b;
  CHECK(x.to_binary_text() == "11001");
  a.append(b);
  CHECK(a.to_binary_text() == "1011001111");
  CHECK_THROWS_AS((void)(x ^ a), std::invalid_argument);
}

TEST_CASE("dot product over GF(2)") {
  BitString a = BitString::from_binary_text("1101");
  BitString b = BitString::from_binary_text("1011");
  // overlap at positions 0 and 3 -> parity 0
  CHECK_FALSE(a.dot(b));
  CHECK(a.dot(BitString::from_binary_text("1000")));
}

TEST_CASE("hex round-trip across word boundaries") {
  Rng rng(99);
  BitString b(131);
  for (size_t i = 0; i < b.size(); ++i) b.set(i, rng.coin());
  BitString back = BitString::from_hex(b.to_hex(), 131);
  CHECK(back == b);
}

TEST_CASE("rng streams are reproducible and label-independent") {
  Rng a(42), b(42);
  for (int i = 0; i < 100; ++i) CHECK(a.next_u64() == b.next_u64());

  // A child stream does not depend on parent draws made before forking.
  Rng c(42);
  Rng child_before = c.child("agent");
  c.next_u64();
  Rng child_after = c.child("agent");
  CHECK(child_before.next_u64() == child_after.next_u64());

  // Different labels give different streams.
  Rng d(42);
  CHECK(d.child("x").next_u64() != d.child("y").next_u64());
  CHECK(d.child("x", 0).next_u64() != d.child("x", 1).next_u64());
}

TEST_CASE("bounded draw stays in range and covers values") {
  Rng rng(7);
  std::set<uint64_t> seen;
  for (int i = 0; i < 2000; ++i) {
    uint64_t v = rng.bounded(7);
    CHECK(v < 7);
    seen.insert(v);
  }
  CHECK(seen.size() == 7);
}

TEST_CASE("uniform01 lies in [0,1) and is roughly centered") {
  Rng rng(1234);
  double sum = 0;
  for (int i = 0; i < 10000; ++i) {
    double u = rng.uniform01();
    CHECK(u >= 0.0);
    CHECK(u < 1.0);
    sum += u;
  }
  CHECK(sum / 10000 == doctest::Approx(0.5).epsilon(0.03));
}

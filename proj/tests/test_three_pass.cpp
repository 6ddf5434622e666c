#include <doctest.h>

#include "qlb/bits.hpp"
#include "qlb/quantum.hpp"
#include "qlb/rng.hpp"
#include "qlb/three_pass.hpp"

using namespace qlb;
using namespace qlb::crypto;
using namespace qlb::quantum;

namespace {

BitString random_bits(size_t n, Rng& rng) {
  BitString out(n);
  for (size_t i = 0; i < n; ++i) out.set(i, rng.coin());
  return out;
}

ThreePassKey uniform_key(size_t n, uint8_t q) {
  ThreePassKey key;
  key.gates.assign(n, PhaseGate(q));
  return key;
}

}  // namespace

TEST_CASE("encrypt: identity key leaves computational states") {
  BitString bits = BitString::from_binary_text("01");
  auto qubits = three_pass_encrypt(bits, uniform_key(2, 0));
  CHECK(equal_up_to_phase(qubits[0], basis_state(StateLabel::Zero)));
  CHECK(equal_up_to_phase(qubits[1], basis_state(StateLabel::One)));
}

TEST_CASE("encrypt: X(pi) flips a one to zero up to phase") {
  BitString bits = BitString::from_binary_text("1");
  auto qubits = three_pass_encrypt(bits, uniform_key(1, 2));
  CHECK(equal_up_to_phase(qubits[0], basis_state(StateLabel::Zero)));
}

TEST_CASE("encrypt: X(pi/2) on zero gives the plus-i state") {
  BitString bits = BitString::from_binary_text("0");
  auto qubits = three_pass_encrypt(bits, uniform_key(1, 1));
  CHECK(equal_up_to_phase(qubits[0], basis_state(StateLabel::PlusI)));
}

TEST_CASE("step with the conjugate key inverts encryption") {
  Rng rng(3);
  BitString bits = random_bits(16, rng);
  ThreePassKey key = ThreePassKey::random(16, rng);
  auto qubits = three_pass_step(three_pass_encrypt(bits, key), key.inverse());
  for (size_t i = 0; i < bits.size(); ++i)
    CHECK(equal_up_to_phase(
        qubits[i], basis_state(bits.get(i) ? StateLabel::One : StateLabel::Zero)));
}

TEST_CASE("exhaustive 16 key pairs x 2 bits: output equals input") {
  // Full four-step protocol for every (sender gate, receiver gate, bit).
  Rng rng(4);
  for (uint8_t k1 = 0; k1 < 4; ++k1)
    for (uint8_t k2 = 0; k2 < 4; ++k2)
      for (int bit = 0; bit < 2; ++bit) {
        BitString payload(1);
        payload.set(0, bit == 1);
        auto result =
            run_three_pass(payload, uniform_key(1, k1), uniform_key(1, k2), rng);
        CHECK(result.received.get(0) == (bit == 1));
      }
}

TEST_CASE("64-bit round trip with random keys") {
  Rng rng(5);
  BitString payload = random_bits(64, rng);
  ThreePassKey k1 = ThreePassKey::random(64, rng);
  ThreePassKey k2 = ThreePassKey::random(64, rng);
  auto result = run_three_pass(payload, k1, k2, rng);
  CHECK(result.received == payload);
  CHECK(result.transcript.pass1.size() == 64);
  CHECK(result.transcript.pass2.size() == 64);
  CHECK(result.transcript.pass3.size() == 64);
}

TEST_CASE("empty payload") {
  Rng rng(6);
  auto result = run_three_pass(BitString(), ThreePassKey{}, ThreePassKey{}, rng);
  CHECK(result.received.size() == 0);
}

TEST_CASE("computational tap on pass 1 disturbs a quarter of the bits") {
  // Enumeration oracle first: for each sender gate q1 and bit b, the
  // intercepted state X(q1)|b> is a computational eigenstate for even q1
  // (no disturbance) and a circular state for odd q1. Measuring the latter
  // collapses to a coin; the surviving key action X(-q1) maps the collapsed
  // computational state back to a circular state, so the receiver's final
  // computational readout is a coin: error 1/2. Expected average error:
  // (0 + 0 + 1/2 + 1/2) / 4 = 1/4.
  double expected = 0.0;
  for (int q1 = 0; q1 < 4; ++q1) expected += (q1 % 2 == 0) ? 0.0 : 0.5;
  expected /= 4.0;
  CHECK(expected == doctest::Approx(0.25));

  Rng rng(20260810);
  const size_t bits_total = 10000;
  size_t errors = 0;
  MeasuringTap tap(1, MeasurementBasis::Computational);
  const size_t chunk = 500;
  for (size_t done = 0; done < bits_total; done += chunk) {
    BitString payload = random_bits(chunk, rng);
    ThreePassKey k1 = ThreePassKey::random(chunk, rng);
    ThreePassKey k2 = ThreePassKey::random(chunk, rng);
    auto result = run_three_pass(payload, k1, k2, rng, &tap);
    for (size_t i = 0; i < chunk; ++i)
      if (result.received.get(i) != payload.get(i)) ++errors;
  }
  double rate = static_cast<double>(errors) / bits_total;
  CHECK(rate > 0.22);
  CHECK(rate < 0.28);
}

#include <doctest.h>

#include <array>
#include <complex>

#include "qlb/quantum.hpp"
#include "qlb/rng.hpp"

using namespace qlb::quantum;
using qlb::Rng;

namespace {

// Independent matrix-definition oracle: builds X(m) from the projector
// form with std::complex arithmetic (no shared code with apply_gate) and
// applies it by explicit matrix-vector product.
struct Matrix2 {
  Amplitude a, b, c, d;  // [[a, b], [c, d]]
};

Matrix2 gate_matrix_oracle(int quarter_turns) {
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  Amplitude plus[2] = {inv_sqrt2, inv_sqrt2};
  Amplitude minus[2] = {inv_sqrt2, -inv_sqrt2};
  Amplitude e = std::exp(Amplitude(0, 1) * (quarter_turns * M_PI / 2.0));
  Matrix2 m;
  m.a = plus[0] * std::conj(plus[0]) + e * minus[0] * std::conj(minus[0]);
  m.b = plus[0] * std::conj(plus[1]) + e * minus[0] * std::conj(minus[1]);
  m.c = plus[1] * std::conj(plus[0]) + e * minus[1] * std::conj(minus[0]);
  m.d = plus[1] * std::conj(plus[1]) + e * minus[1] * std::conj(minus[1]);
  return m;
}

QubitState apply_oracle(const Matrix2& m, const QubitState& s) {
  return {m.a * s.amp0 + m.b * s.amp1, m.c * s.amp0 + m.d * s.amp1};
}

bool states_close(const QubitState& a, const QubitState& b, double tol = 1e-12) {
  return std::abs(a.amp0 - b.amp0) <= tol && std::abs(a.amp1 - b.amp1) <= tol;
}

const std::array<StateLabel, 4> kLabels = {StateLabel::Zero, StateLabel::One,
                                           StateLabel::PlusI, StateLabel::MinusI};

}  // namespace

TEST_CASE("canonical basis states") {
  QubitState zero = basis_state(StateLabel::Zero);
  CHECK(zero.amp0 == Amplitude(1, 0));
  CHECK(zero.amp1 == Amplitude(0, 0));
  QubitState one = basis_state(StateLabel::One);
  CHECK(one.amp0 == Amplitude(0, 0));
  CHECK(one.amp1 == Amplitude(1, 0));
  for (StateLabel l : kLabels) CHECK(basis_state(l).is_normalized());
}

TEST_CASE("plus-i state matches the gate-definition oracle") {
  // Derived by the oracle, not assumed: X(pi/2)|0>, phase-normalized.
  QubitState derived =
      apply_oracle(gate_matrix_oracle(1), basis_state(StateLabel::Zero))
          .phase_normalized();
  QubitState plus_i = basis_state(StateLabel::PlusI);
  CHECK(states_close(derived, plus_i, 1e-12));
  // Frozen expected value from the oracle: (1/sqrt2, -i/sqrt2).
  CHECK(plus_i.amp0.real() == doctest::Approx(0.7071067811865476));
  CHECK(plus_i.amp0.imag() == doctest::Approx(0.0));
  CHECK(plus_i.amp1.real() == doctest::Approx(0.0));
  CHECK(plus_i.amp1.imag() == doctest::Approx(-0.7071067811865476));
}

TEST_CASE("apply_gate agrees with the matrix oracle on random states") {
  Rng rng(21);
  for (int trial = 0; trial < 200; ++trial) {
    // Random normalized state.
    double t = rng.uniform01() * M_PI, p1 = rng.uniform01() * 2 * M_PI,
           p2 = rng.uniform01() * 2 * M_PI;
    QubitState s{std::polar(std::cos(t / 2), p1), std::polar(std::sin(t / 2), p2)};
    int q = static_cast<int>(rng.bounded(4));
    QubitState got = apply_gate(PhaseGate(static_cast<uint8_t>(q)), s);
    QubitState want = apply_oracle(gate_matrix_oracle(q), s);
    CHECK(states_close(got, want, 1e-12));
    CHECK(got.is_normalized());
  }
}

TEST_CASE("X(0) is the identity and X(pi) swaps the basis") {
  for (StateLabel l : kLabels) {
    QubitState s = basis_state(l);
    CHECK(states_close(apply_gate(PhaseGate(0), s), s));
  }
  CHECK(equal_up_to_phase(apply_gate(PhaseGate(2), basis_state(StateLabel::Zero)),
                          basis_state(StateLabel::One)));
  CHECK(equal_up_to_phase(apply_gate(PhaseGate(2), basis_state(StateLabel::One)),
                          basis_state(StateLabel::Zero)));
  CHECK(equal_up_to_phase(apply_gate(PhaseGate(2), basis_state(StateLabel::PlusI)),
                          basis_state(StateLabel::MinusI)));
  CHECK(equal_up_to_phase(apply_gate(PhaseGate(2), basis_state(StateLabel::MinusI)),
                          basis_state(StateLabel::PlusI)));
}

TEST_CASE("group law: quarter turns add mod 4") {
  Rng rng(5);
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b) {
      PhaseGate ga(static_cast<uint8_t>(a)), gb(static_cast<uint8_t>(b));
      CHECK(ga.compose(gb) == PhaseGate(static_cast<uint8_t>((a + b) % 4)));
      for (StateLabel l : kLabels) {
        QubitState s = basis_state(l);
        QubitState two_step = apply_gate(ga, apply_gate(gb, s));
        QubitState one_step = apply_gate(ga.compose(gb), s);
        CHECK(equal_up_to_phase(two_step, one_step, 1e-12));
      }
    }
  // Inverse pair: X(m) then X(2pi - m) restores any state exactly.
  for (int q = 0; q < 4; ++q) {
    PhaseGate g(static_cast<uint8_t>(q));
    double t = rng.uniform01() * M_PI;
    QubitState s{std::cos(t / 2), std::sin(t / 2)};
    CHECK(states_close(apply_gate(g.inverse(), apply_gate(g, s)), s, 1e-12));
  }
}

TEST_CASE("gate commutativity, exact matrix check") {
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b) {
      Matrix2 ma = gate_matrix_oracle(a), mb = gate_matrix_oracle(b);
      // (ma*mb) vs (mb*ma), entrywise
      Amplitude ab[4] = {ma.a * mb.a + ma.b * mb.c, ma.a * mb.b + ma.b * mb.d,
                         ma.c * mb.a + ma.d * mb.c, ma.c * mb.b + ma.d * mb.d};
      Amplitude ba[4] = {mb.a * ma.a + mb.b * ma.c, mb.a * ma.b + mb.b * ma.d,
                         mb.c * ma.a + mb.d * ma.c, mb.c * ma.b + mb.d * ma.d};
      for (int i = 0; i < 4; ++i) CHECK(std::abs(ab[i] - ba[i]) < 1e-12);
    }
}

TEST_CASE("rotate_label matches the matrix route") {
  for (StateLabel l : kLabels)
    for (int q = 0; q < 4; ++q) {
      PhaseGate g(static_cast<uint8_t>(q));
      QubitState via_matrix = apply_gate(g, basis_state(l));
      StateLabel predicted = rotate_label(l, g);
      CHECK(equal_up_to_phase(via_matrix, basis_state(predicted), 1e-12));
    }
}

TEST_CASE("measurement in the own basis is deterministic and idempotent") {
  Rng rng(11);
  for (StateLabel l : kLabels) {
    MeasurementBasis b = basis_of(l);
    size_t hits = 0, idempotent = 0;
    for (int i = 0; i < 10000; ++i) {
      auto m = measure(basis_state(l), b, rng);
      if (m.outcome == outcome_of(l)) ++hits;
      auto again = measure(m.post_state, b, rng);
      if (again.outcome == m.outcome) ++idempotent;
    }
    CHECK(hits == 10000);
    CHECK(idempotent == 10000);
  }
}

TEST_CASE("measurement in the conjugate basis is a fair coin") {
  Rng rng(13);
  for (StateLabel l : kLabels) {
    MeasurementBasis other = basis_of(l) == MeasurementBasis::Computational
                                 ? MeasurementBasis::Circular
                                 : MeasurementBasis::Computational;
    int zeros = 0;
    const int trials = 10000;
    for (int i = 0; i < trials; ++i)
      if (measure(basis_state(l), other, rng).outcome == 0) ++zeros;
    double freq = static_cast<double>(zeros) / trials;
    CHECK(freq > 0.48);
    CHECK(freq < 0.52);
  }
}

TEST_CASE("X(pi)|i> measures deterministically as the minus-i state") {
  Rng rng(17);
  QubitState rotated = apply_gate(PhaseGate(2), basis_state(StateLabel::PlusI));
  for (int i = 0; i < 50; ++i) {
    auto m = measure(rotated, MeasurementBasis::Circular, rng);
    CHECK(m.outcome == outcome_of(StateLabel::MinusI));
  }
}

TEST_CASE("equal_up_to_phase") {
  QubitState zero = basis_state(StateLabel::Zero);
  CHECK(equal_up_to_phase(zero, zero));
  QubitState rotated{std::polar(1.0, M_PI / 4), 0.0};
  CHECK(equal_up_to_phase(zero, rotated));
  CHECK_FALSE(equal_up_to_phase(zero, basis_state(StateLabel::One)));
  CHECK_FALSE(equal_up_to_phase(basis_state(StateLabel::PlusI),
                                basis_state(StateLabel::MinusI)));
}

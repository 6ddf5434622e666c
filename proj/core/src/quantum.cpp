#include "qlb/quantum.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace qlb::quantum {

namespace {

constexpr double kInvSqrt2 = 0.70710678118654752440;

// e^{i m} for the four quarter turns, exact.
constexpr Amplitude unit_phase(uint8_t q) {
  switch (q & 3) {
    case 0: return {1.0, 0.0};
    case 1: return {0.0, 1.0};
    case 2: return {-1.0, 0.0};
    default: return {0.0, -1.0};
  }
}

}  // namespace

bool QubitState::is_normalized(double tol) const {
  return std::abs(norm_sq() - 1.0) <= tol;
}

QubitState QubitState::phase_normalized() const {
  Amplitude ref = std::abs(amp0) > 1e-12 ? amp0 : amp1;
  double mag = std::abs(ref);
  if (mag == 0.0) return *this;
  Amplitude phase = ref / mag;
  return {amp0 / phase, amp1 / phase};
}

double PhaseGate::phase_radians() const {
  return q_ * std::numbers::pi / 2.0;
}

QubitState basis_state(StateLabel label) {
  switch (label) {
    case StateLabel::Zero:   return {{1.0, 0.0}, {0.0, 0.0}};
    case StateLabel::One:    return {{0.0, 0.0}, {1.0, 0.0}};
    // X(pi/2)|0> and X(3pi/2)|0>, phase-fixed.
    case StateLabel::PlusI:  return {{kInvSqrt2, 0.0}, {0.0, -kInvSqrt2}};
    case StateLabel::MinusI: return {{kInvSqrt2, 0.0}, {0.0, kInvSqrt2}};
  }
  throw std::invalid_argument("unknown state label");
}

QubitState basis_eigenstate(MeasurementBasis b, int outcome) {
  return basis_state(label_of(b, outcome));
}

StateLabel label_of(MeasurementBasis b, int outcome) {
  if (b == MeasurementBasis::Computational)
    return outcome == 0 ? StateLabel::Zero : StateLabel::One;
  return outcome == 0 ? StateLabel::PlusI : StateLabel::MinusI;
}

MeasurementBasis basis_of(StateLabel label) {
  return (label == StateLabel::Zero || label == StateLabel::One)
             ? MeasurementBasis::Computational
             : MeasurementBasis::Circular;
}

int outcome_of(StateLabel label) {
  return (label == StateLabel::One || label == StateLabel::MinusI) ? 1 : 0;
}

StateLabel rotate_label(StateLabel label, PhaseGate g) {
  static constexpr StateLabel cycle[4] = {StateLabel::Zero, StateLabel::PlusI,
                                          StateLabel::One, StateLabel::MinusI};
  int idx;
  switch (label) {
    case StateLabel::Zero:   idx = 0; break;
    case StateLabel::PlusI:  idx = 1; break;
    case StateLabel::One:    idx = 2; break;
    default:                 idx = 3; break;
  }
  return cycle[(idx + g.quarter_turns()) % 4];
}

QubitState apply_gate(PhaseGate g, const QubitState& s) {
  // X(m) = |+><+| + e^{im}|-><-| = 1/2 [[1+e, 1-e], [1-e, 1+e]].
  Amplitude e = unit_phase(g.quarter_turns());
  Amplitude a = (1.0 + e) * 0.5;
  Amplitude b = (1.0 - e) * 0.5;
  return {a * s.amp0 + b * s.amp1, b * s.amp0 + a * s.amp1};
}

double outcome0_probability(const QubitState& s, MeasurementBasis b) {
  QubitState e0 = basis_eigenstate(b, 0);
  Amplitude overlap = std::conj(e0.amp0) * s.amp0 + std::conj(e0.amp1) * s.amp1;
  return std::norm(overlap);
}

MeasurementResult measure(const QubitState& s, MeasurementBasis b, Rng& rng) {
  double p0 = outcome0_probability(s, b);
  int outcome = rng.uniform01() < p0 ? 0 : 1;
  return {outcome, basis_eigenstate(b, outcome)};
}

bool equal_up_to_phase(const QubitState& a, const QubitState& b, double tol) {
  Amplitude overlap = std::conj(a.amp0) * b.amp0 + std::conj(a.amp1) * b.amp1;
  return std::abs(overlap) >= 1.0 - tol;
}

}  // namespace qlb::quantum

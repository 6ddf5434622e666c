#pragma once

#include <complex>
#include <cstdint>

#include "qlb/rng.hpp"

namespace qlb::quantum {

using Amplitude = std::complex<double>;

constexpr double kNormTolerance = 1e-9;
constexpr double kPhaseTolerance = 1e-9;

/// Single-qubit pure state |psi> = amp0|0> + amp1|1>, always normalized.
struct QubitState {
  Amplitude amp0;
  Amplitude amp1;

  double norm_sq() const { return std::norm(amp0) + std::norm(amp1); }
  bool is_normalized(double tol = kNormTolerance) const;

  /// Rescales so the first nonzero amplitude is real and non-negative.
  /// Canonical states compare exactly equal under this convention.
  QubitState phase_normalized() const;
};

enum class StateLabel : uint8_t { Zero = 0, One = 1, PlusI = 2, MinusI = 3 };

/// Phase rotation about the |+>/|-> axis, one of four quarter turns.
/// The full gate family is {X(0), X(pi/2), X(pi), X(3pi/2)}; composition is
/// addition of quarter turns mod 4, and X(q) * X(4-q) is exactly the
/// identity, which is what makes the three-pass channel commute.
class PhaseGate {
 public:
  constexpr PhaseGate() = default;
  constexpr explicit PhaseGate(uint8_t quarter_turns) : q_(quarter_turns % 4) {}

  uint8_t quarter_turns() const { return q_; }
  double phase_radians() const;

  PhaseGate inverse() const { return PhaseGate(static_cast<uint8_t>((4 - q_) % 4)); }
  PhaseGate compose(PhaseGate other) const {
    return PhaseGate(static_cast<uint8_t>(q_ + other.q_));
  }
  bool operator==(const PhaseGate&) const = default;

  static constexpr PhaseGate identity() { return PhaseGate(0); }

 private:
  uint8_t q_ = 0;
};

enum class MeasurementBasis : uint8_t { Computational = 0, Circular = 1 };

struct MeasurementResult {
  int outcome;           // 0 or 1, indexing the basis states
  QubitState post_state; // collapsed canonical basis state
};

/// Canonical state for a label, phase-fixed (amp0 real, >= 0).
/// PlusI and MinusI are defined operationally as X(pi/2)|0> and X(3pi/2)|0>.
QubitState basis_state(StateLabel label);

/// Basis state of `b` with index `outcome` (0 or 1).
QubitState basis_eigenstate(MeasurementBasis b, int outcome);

StateLabel label_of(MeasurementBasis b, int outcome);
MeasurementBasis basis_of(StateLabel label);
int outcome_of(StateLabel label);

/// Exact action of X(q) on the four canonical states: they form a 4-cycle
/// Zero -> PlusI -> One -> MinusI under a quarter turn (up to global
/// phase). Verified against the matrix route in the unit tests.
StateLabel rotate_label(StateLabel label, PhaseGate g);

QubitState apply_gate(PhaseGate g, const QubitState& s);

/// Projective measurement with Born-rule sampling; collapses to the
/// canonical eigenstate so repeated measurement is exactly idempotent.
MeasurementResult measure(const QubitState& s, MeasurementBasis b, Rng& rng);

/// Probability of outcome 0 when measuring s in basis b.
double outcome0_probability(const QubitState& s, MeasurementBasis b);

/// True iff |<a|b>| >= 1 - tol, i.e. equal up to a global phase.
bool equal_up_to_phase(const QubitState& a, const QubitState& b,
                       double tol = kPhaseTolerance);

}  // namespace qlb::quantum

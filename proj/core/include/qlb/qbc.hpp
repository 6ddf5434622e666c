#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qlb/bits.hpp"
#include "qlb/ledger.hpp"
#include "qlb/quantum.hpp"
#include "qlb/rng.hpp"

namespace qlb::qbc {

using quantum::MeasurementBasis;
using quantum::QubitState;
using quantum::StateLabel;

/// n qubits, n % 4 == 0, with exactly n/4 of each canonical state and each
/// adjacent pair (2j, 2j+1) drawn from different bases. `labels` is the
/// preparer's private record of what was sent.
struct BalancedUniformSequence {
  std::vector<QubitState> states;
  std::vector<StateLabel> labels;
  size_t size() const { return states.size(); }
};

bool is_balanced_uniform(const std::vector<StateLabel>& labels);

// ---------------------------------------------------------------------------
// Preparation phase

enum class BobStrategy : uint8_t {
  Honest,
  SequenceSkew,  // one sequence built from n/2 zeros; counts violated
};

struct PreparedSequences {
  std::vector<BalancedUniformSequence> sequences;
  std::optional<size_t> skewed_index;
};

/// Bob generates `count` sequences of n qubits. count >= 2, n % 4 == 0.
PreparedSequences prepare_sequences(size_t n, size_t count, BobStrategy strategy,
                                    Rng& rng);

/// Alice opens `chosen` sequences: Bob reveals labels position by position
/// (truthfully here; doctored reveals can be passed directly), Alice
/// measures each qubit in the declared basis and also checks the declared
/// labels against the balanced-uniform specification.
struct VerifyResult {
  bool cheat_detected = false;
  std::string detail;
};
VerifyResult alice_verify(const std::vector<BalancedUniformSequence>& sequences,
                          const std::vector<size_t>& chosen,
                          const std::vector<std::vector<StateLabel>>& reveals,
                          Rng& rng);

// ---------------------------------------------------------------------------
// Commitment phase

/// Commit value is two bits read most-significant first: 00/01/10/11 map
/// to 0..3 quarter turns.
struct Commitment {
  int value = 0;                      // Alice's private committed value
  BitString swap_string;              // CS, length n/2, Alice's private copy
  std::vector<QubitState> transmitted;
};

/// Applies X(q_value) to every qubit, then exchanges pair (2j, 2j+1) iff
/// CS[j] = 1. `gate_override` lets a cheating Alice apply a different gate
/// on a suffix of positions.
Commitment commit(int value, const BalancedUniformSequence& qs,
                  const BitString& swap_string,
                  std::optional<std::pair<size_t, int>> gate_override = {});

struct PositionMeasurement {
  MeasurementBasis basis;
  int outcome;
};

/// Bob measures each received qubit in a uniformly random basis.
std::vector<PositionMeasurement> bob_measure(const std::vector<QubitState>& received,
                                             Rng& rng);

// ---------------------------------------------------------------------------
// Opening phase

struct OpeningVerdict {
  enum class Kind : uint8_t { Revealed, CheatDetected } kind = Kind::CheatDetected;
  int value = 0;  // valid when revealed
  /// Index of the hypothesis whose relevant positions all matched.
  static OpeningVerdict revealed(int v) { return {Kind::Revealed, v}; }
  static OpeningVerdict cheat() { return {Kind::CheatDetected, 0}; }
  bool revealed_ok() const { return kind == Kind::Revealed; }
};

/// Bob un-swaps his label record with the revealed CS, classifies each
/// position by whether his random basis matched the believed original's
/// basis, and tests the four reconstruction hypotheses: value 0 and 2 are
/// read off correct-basis positions (identity / X(pi) image of the
/// original), value 1 and 3 off incorrect-basis positions (X(pi/2) /
/// X(3pi/2) image). Exactly one hypothesis may survive with at least
/// `min_relevant` relevant positions; anything else is Alice cheating.
OpeningVerdict open_and_reconstruct(const BitString& revealed_cs,
                                    const std::vector<StateLabel>& bob_labels,
                                    const std::vector<PositionMeasurement>& measured,
                                    size_t min_relevant);

// ---------------------------------------------------------------------------
// Whole-session driver

enum class AliceStrategy : uint8_t {
  Honest,
  WrongCs,       // reveals CS with one flipped bit at opening
  GateMismatch,  // applies a mismatched gate to half of the qubits
};

struct SessionParams {
  size_t n = 40;           // qubits per sequence, multiple of 4
  size_t sequences = 5;    // m
  size_t min_relevant = 5; // floor for a hypothesis to count, default n/8
  int commit_value = 0;    // 0..3
};

struct TranscriptEvent {
  std::string phase, party, action, digest;
};

struct SessionResult {
  bool prep_cheat_detected = false;
  std::optional<OpeningVerdict> opening;  // absent if aborted in preparation
  int committed = 0;
  std::vector<TranscriptEvent> transcript;
  /// Summary fields used as the classical certificate for bonds.
  ledger::Evidence summary;
};

SessionResult run_session(const SessionParams& params, AliceStrategy alice,
                          BobStrategy bob, Rng& rng);

/// Canonical one-line rendering of the summary fields that the bond
/// predicates reference; the harness MACs this string into the evidence.
std::string summary_line(const ledger::Evidence& summary);

// ---------------------------------------------------------------------------
// Punishment bonds

struct BondPlan {
  ledger::TransactionRequest bob_bond;    // frozen unless preparation was clean
  ledger::TransactionRequest alice_bond;  // frozen unless opening succeeded
};

/// Protected self-transfers covering n qulogicoins each. Bob's bond opens
/// only if Alice reported no preparation cheating; Alice's bond opens only
/// if one of the four reconstruction hypotheses held at opening. Both also
/// require a valid transcript MAC. With `quantum_atoms`, Alice's bond
/// additionally carries a quantum protection over deposit qubits prepared
/// at commitment time (one group of `deposit_group` qubits per hypothesis).
BondPlan build_punishment_bonds(ledger::NodeId alice, ledger::NodeId bob,
                                int64_t n_coins, const ledger::Ledger& book,
                                bool quantum_atoms, size_t deposit_group);

/// Deposit states for the quantum-atom variant: group v holds the
/// committed-gate image of |0> when v equals the committed value and the
/// orthogonal state otherwise, so exactly one hypothesis group verifies.
std::vector<QubitState> build_bond_deposit(int commit_value, size_t deposit_group);

}  // namespace qlb::qbc

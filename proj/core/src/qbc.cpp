#include "qlb/qbc.hpp"

#include <algorithm>
#include <array>
#include <sstream>
#include <stdexcept>

namespace qlb::qbc {

using quantum::PhaseGate;

namespace {

const char* label_name(StateLabel l) {
  switch (l) {
    case StateLabel::Zero: return "0";
    case StateLabel::One: return "1";
    case StateLabel::PlusI: return "i";
    case StateLabel::MinusI: return "-i";
  }
  return "?";
}

std::vector<StateLabel> balanced_labels(size_t n, Rng& rng) {
  // One computational and one circular state per adjacent pair, order
  // randomized inside the pair; exact n/4 multiplicity of each label.
  std::vector<StateLabel> comp, circ;
  comp.insert(comp.end(), n / 4, StateLabel::Zero);
  comp.insert(comp.end(), n / 4, StateLabel::One);
  circ.insert(circ.end(), n / 4, StateLabel::PlusI);
  circ.insert(circ.end(), n / 4, StateLabel::MinusI);
  for (size_t i = comp.size(); i > 1; --i) std::swap(comp[i - 1], comp[rng.bounded(i)]);
  for (size_t i = circ.size(); i > 1; --i) std::swap(circ[i - 1], circ[rng.bounded(i)]);

  std::vector<StateLabel> out;
  out.reserve(n);
  for (size_t j = 0; j < n / 2; ++j) {
    if (rng.coin()) {
      out.push_back(comp[j]);
      out.push_back(circ[j]);
    } else {
      out.push_back(circ[j]);
      out.push_back(comp[j]);
    }
  }
  return out;
}

BalancedUniformSequence sequence_from_labels(std::vector<StateLabel> labels) {
  BalancedUniformSequence seq;
  seq.labels = std::move(labels);
  seq.states.reserve(seq.labels.size());
  for (StateLabel l : seq.labels) seq.states.push_back(quantum::basis_state(l));
  return seq;
}

}  // namespace

bool is_balanced_uniform(const std::vector<StateLabel>& labels) {
  size_t n = labels.size();
  if (n == 0 || n % 4 != 0) return false;
  std::array<size_t, 4> counts{};
  for (StateLabel l : labels) ++counts[static_cast<size_t>(l)];
  for (size_t c : counts)
    if (c != n / 4) return false;
  for (size_t j = 0; j < n / 2; ++j)
    if (quantum::basis_of(labels[2 * j]) == quantum::basis_of(labels[2 * j + 1]))
      return false;
  return true;
}

PreparedSequences prepare_sequences(size_t n, size_t count, BobStrategy strategy,
                                    Rng& rng) {
  if (n == 0 || n % 4 != 0)
    throw std::invalid_argument("sequence length must be a positive multiple of 4");
  if (count < 2) throw std::invalid_argument("need at least 2 sequences");

  PreparedSequences out;
  for (size_t s = 0; s < count; ++s) {
    Rng seq_rng = rng.child("sequence", s);
    out.sequences.push_back(sequence_from_labels(balanced_labels(n, seq_rng)));
  }
  if (strategy == BobStrategy::SequenceSkew) {
    size_t bad = rng.bounded(count);
    out.skewed_index = bad;
    // Half the qubits forced to |0>: multiplicity check cannot pass.
    std::vector<StateLabel> labels = out.sequences[bad].labels;
    for (size_t p = 0; p < n / 2; ++p) labels[2 * p] = StateLabel::Zero;
    out.sequences[bad] = sequence_from_labels(std::move(labels));
  }
  return out;
}

VerifyResult alice_verify(const std::vector<BalancedUniformSequence>& sequences,
                          const std::vector<size_t>& chosen,
                          const std::vector<std::vector<StateLabel>>& reveals,
                          Rng& rng) {
  if (chosen.size() != reveals.size())
    throw std::invalid_argument("alice_verify: reveal count mismatch");
  for (size_t i = 0; i < chosen.size(); ++i) {
    const BalancedUniformSequence& seq = sequences.at(chosen[i]);
    const std::vector<StateLabel>& declared = reveals[i];
    if (declared.size() != seq.size())
      return {true, "sequence length mismatch"};
    if (!is_balanced_uniform(declared))
      return {true, "declared labels violate the balanced-uniform specification"};
    for (size_t p = 0; p < declared.size(); ++p) {
      auto m = quantum::measure(seq.states[p], quantum::basis_of(declared[p]), rng);
      if (m.outcome != quantum::outcome_of(declared[p]))
        return {true, "qubit does not match the declared state"};
    }
  }
  return {false, ""};
}

Commitment commit(int value, const BalancedUniformSequence& qs,
                  const BitString& swap_string,
                  std::optional<std::pair<size_t, int>> gate_override) {
  if (value < 0 || value > 3) throw std::invalid_argument("commit value must be 0..3");
  if (swap_string.size() != qs.size() / 2)
    throw std::invalid_argument("swap string must have n/2 bits");

  Commitment c;
  c.value = value;
  c.swap_string = swap_string;
  c.transmitted.reserve(qs.size());
  for (size_t p = 0; p < qs.size(); ++p) {
    int q = value;
    if (gate_override && p >= gate_override->first) q = gate_override->second;
    c.transmitted.push_back(
        quantum::apply_gate(PhaseGate(static_cast<uint8_t>(q)), qs.states[p]));
  }
  for (size_t j = 0; j < swap_string.size(); ++j)
    if (swap_string.get(j)) std::swap(c.transmitted[2 * j], c.transmitted[2 * j + 1]);
  return c;
}

std::vector<PositionMeasurement> bob_measure(const std::vector<QubitState>& received,
                                             Rng& rng) {
  std::vector<PositionMeasurement> out;
  out.reserve(received.size());
  for (const QubitState& q : received) {
    MeasurementBasis b = rng.coin() ? MeasurementBasis::Circular
                                    : MeasurementBasis::Computational;
    out.push_back({b, quantum::measure(q, b, rng).outcome});
  }
  return out;
}

OpeningVerdict open_and_reconstruct(const BitString& revealed_cs,
                                    const std::vector<StateLabel>& bob_labels,
                                    const std::vector<PositionMeasurement>& measured,
                                    size_t min_relevant) {
  size_t n = bob_labels.size();
  if (measured.size() != n || revealed_cs.size() != n / 2)
    return OpeningVerdict::cheat();

  // Un-swap: Bob's belief about which original state sits at each received
  // position, according to the CS Alice revealed.
  std::vector<StateLabel> believed = bob_labels;
  for (size_t j = 0; j < revealed_cs.size(); ++j)
    if (revealed_cs.get(j)) std::swap(believed[2 * j], believed[2 * j + 1]);

  // Hypothesis v: at every position whose measured basis matches the basis
  // of X(q_v)|original>, the outcome must be exactly that state. For even v
  // those are the correct-basis positions, for odd v the incorrect ones.
  size_t passing = 0;
  int passing_value = -1;
  for (int v = 0; v < 4; ++v) {
    size_t relevant = 0;
    bool all_match = true;
    for (size_t p = 0; p < n; ++p) {
      StateLabel expected =
          quantum::rotate_label(believed[p], PhaseGate(static_cast<uint8_t>(v)));
      if (quantum::basis_of(expected) != measured[p].basis) continue;
      ++relevant;
      if (measured[p].outcome != quantum::outcome_of(expected)) {
        all_match = false;
        break;
      }
    }
    if (all_match && relevant >= min_relevant) {
      ++passing;
      passing_value = v;
    }
  }
  if (passing == 1) return OpeningVerdict::revealed(passing_value);
  return OpeningVerdict::cheat();  // zero or ambiguous hypotheses
}

namespace {

std::string label_digest(const std::vector<StateLabel>& labels) {
  std::string out;
  for (StateLabel l : labels) out += label_name(l);
  return std::to_string(Rng::hash_label(out));
}

}  // namespace

SessionResult run_session(const SessionParams& params, AliceStrategy alice,
                          BobStrategy bob, Rng& rng) {
  SessionResult result;
  result.committed = params.commit_value;

  Rng bob_rng = rng.child("bob");
  Rng alice_rng = rng.child("alice");

  // Preparation: Bob sends m sequences, Alice opens all but one.
  PreparedSequences prepared =
      prepare_sequences(params.n, params.sequences, bob, bob_rng);
  result.transcript.push_back({"preparation", "bob", "send-sequences",
                               std::to_string(params.sequences)});

  size_t keep = alice_rng.bounded(params.sequences);
  std::vector<size_t> chosen;
  std::vector<std::vector<StateLabel>> reveals;
  for (size_t s = 0; s < params.sequences; ++s) {
    if (s == keep) continue;
    chosen.push_back(s);
    reveals.push_back(prepared.sequences[s].labels);  // Bob reveals truthfully
  }
  VerifyResult verify = alice_verify(prepared.sequences, chosen, reveals, alice_rng);
  result.prep_cheat_detected = verify.cheat_detected;
  result.transcript.push_back({"preparation", "alice", "verify",
                               verify.cheat_detected ? "cheat" : "pass"});
  result.summary["prep_verdict"] = verify.cheat_detected ? "cheat" : "pass";
  if (verify.cheat_detected) {
    result.summary["opening_verdict"] = "aborted";
    result.summary["opening_hypothesis"] = "none";
    return result;
  }

  // Commitment.
  const BalancedUniformSequence& qs = prepared.sequences[keep];
  BitString cs(params.n / 2);
  for (size_t j = 0; j < cs.size(); ++j) cs.set(j, alice_rng.coin());

  std::optional<std::pair<size_t, int>> gate_override;
  if (alice == AliceStrategy::GateMismatch)
    gate_override = {params.n / 2, (params.commit_value + 1) % 4};
  Commitment commitment = commit(params.commit_value, qs, cs, gate_override);
  result.transcript.push_back(
      {"commitment", "alice", "send-qubits", label_digest(qs.labels)});

  std::vector<PositionMeasurement> measured =
      bob_measure(commitment.transmitted, bob_rng);
  result.transcript.push_back({"commitment", "bob", "measure",
                               std::to_string(measured.size())});

  // Opening: Alice reveals CS (a cheating Alice flips one bit).
  BitString revealed = cs;
  if (alice == AliceStrategy::WrongCs) {
    size_t flip = alice_rng.bounded(revealed.size());
    revealed.set(flip, !revealed.get(flip));
  }
  result.transcript.push_back({"opening", "alice", "reveal-cs", revealed.to_hex()});

  OpeningVerdict verdict =
      open_and_reconstruct(revealed, qs.labels, measured, params.min_relevant);
  result.opening = verdict;
  result.transcript.push_back(
      {"opening", "bob", "reconstruct",
       verdict.revealed_ok() ? std::to_string(verdict.value) : "cheat"});

  static const char* kValueNames[4] = {"00", "01", "10", "11"};
  result.summary["opening_verdict"] =
      verdict.revealed_ok() ? "revealed" : "cheat";
  result.summary["opening_hypothesis"] =
      verdict.revealed_ok() ? kValueNames[verdict.value] : "none";
  return result;
}

std::string summary_line(const ledger::Evidence& summary) {
  std::ostringstream os;
  bool first = true;
  for (const auto& [key, value] : summary) {
    if (key == "summary" || key == "summary_mac" || key == "summary_key") continue;
    os << (first ? "" : ";") << key << '=' << value;
    first = false;
  }
  return os.str();
}

BondPlan build_punishment_bonds(ledger::NodeId alice, ledger::NodeId bob,
                                int64_t n_coins, const ledger::Ledger& book,
                                bool quantum_atoms, size_t deposit_group) {
  using ledger::Predicate;

  auto pick_inputs = [&](ledger::NodeId owner) {
    std::vector<std::string> picked;
    int64_t total = 0;
    for (const auto& entry : book.entries()) {
      if (entry.recipient != owner || book.is_redeemed(entry.id)) continue;
      picked.push_back(entry.id);
      total += entry.amount;
      if (total >= n_coins) break;
    }
    if (total < n_coins)
      throw std::invalid_argument("insufficient funds for punishment bond");
    return picked;
  };

  Predicate transcript_ok =
      Predicate::mac_valid("summary", "summary_mac", "summary_key");

  BondPlan plan;
  plan.bob_bond.sender = bob;
  plan.bob_bond.receiver = bob;
  plan.bob_bond.redeems = pick_inputs(bob);
  plan.bob_bond.classical_protection = Predicate::all_of(
      {transcript_ok, Predicate::field_equals("prep_verdict", "pass")});
  plan.bob_bond.form = ledger::TxForm::Protected;

  plan.alice_bond.sender = alice;
  plan.alice_bond.receiver = alice;
  plan.alice_bond.redeems = pick_inputs(alice);
  // Alice's coins unlock when some reconstruction hypothesis held at
  // opening, i.e. Bob did not catch her there. A session that never
  // reached the opening phase cannot incriminate her either.
  plan.alice_bond.classical_protection = Predicate::all_of(
      {transcript_ok,
       Predicate::any_of({Predicate::field_equals("opening_hypothesis", "00"),
                          Predicate::field_equals("opening_hypothesis", "01"),
                          Predicate::field_equals("opening_hypothesis", "10"),
                          Predicate::field_equals("opening_hypothesis", "11"),
                          Predicate::field_equals("opening_verdict", "aborted")})});
  if (quantum_atoms) {
    // One qubit group per hypothesis; group v verifies iff the deposit was
    // prepared under commitment value v. Without a commitment there is no
    // deposit, so the aborted case rides along as a classical disjunct.
    std::vector<Predicate> groups;
    for (int v = 0; v < 4; ++v) {
      StateLabel expected = quantum::rotate_label(StateLabel::Zero,
                                                  PhaseGate(static_cast<uint8_t>(v)));
      groups.push_back(Predicate::quantum_test(
          v * deposit_group, deposit_group, quantum::basis_of(expected),
          quantum::outcome_of(expected), deposit_group));
    }
    groups.push_back(Predicate::field_equals("opening_verdict", "aborted"));
    plan.alice_bond.quantum_protection = Predicate::any_of(std::move(groups));
  }
  plan.alice_bond.form = ledger::TxForm::Protected;
  return plan;
}

std::vector<QubitState> build_bond_deposit(int commit_value, size_t deposit_group) {
  std::vector<QubitState> deposit;
  deposit.reserve(4 * deposit_group);
  for (int v = 0; v < 4; ++v) {
    StateLabel group_label = quantum::rotate_label(
        StateLabel::Zero, PhaseGate(static_cast<uint8_t>(v)));
    if (v != commit_value) {
      // Orthogonal state in the same basis: the group's test fails surely.
      group_label = quantum::rotate_label(group_label, PhaseGate(2));
    }
    for (size_t i = 0; i < deposit_group; ++i)
      deposit.push_back(quantum::basis_state(group_label));
  }
  return deposit;
}

}  // namespace qlb::qbc

#include "qlb/three_pass.hpp"

#include <stdexcept>

namespace qlb::crypto {

using quantum::MeasurementBasis;
using quantum::PhaseGate;
using quantum::QubitState;

ThreePassKey ThreePassKey::random(size_t n, Rng& rng) {
  ThreePassKey key;
  key.gates.reserve(n);
  for (size_t i = 0; i < n; ++i)
    key.gates.push_back(PhaseGate(static_cast<uint8_t>(rng.bounded(4))));
  return key;
}

ThreePassKey ThreePassKey::inverse() const {
  ThreePassKey inv;
  inv.gates.reserve(gates.size());
  for (PhaseGate g : gates) inv.gates.push_back(g.inverse());
  return inv;
}

void MeasuringTap::on_pass(int pass, std::vector<QubitState>& qubits, Rng& rng) {
  if (pass != pass_) return;
  for (QubitState& q : qubits) q = quantum::measure(q, basis_, rng).post_state;
}

std::vector<QubitState> three_pass_encrypt(const BitString& bits,
                                           const ThreePassKey& key) {
  if (bits.size() != key.size())
    throw std::invalid_argument("three_pass_encrypt: key/payload length mismatch");
  std::vector<QubitState> out;
  out.reserve(bits.size());
  for (size_t i = 0; i < bits.size(); ++i) {
    QubitState s = quantum::basis_state(bits.get(i) ? quantum::StateLabel::One
                                                    : quantum::StateLabel::Zero);
    out.push_back(quantum::apply_gate(key.gates[i], s));
  }
  return out;
}

std::vector<QubitState> three_pass_step(std::vector<QubitState> qubits,
                                        const ThreePassKey& key) {
  if (qubits.size() != key.size())
    throw std::invalid_argument("three_pass_step: key/payload length mismatch");
  for (size_t i = 0; i < qubits.size(); ++i)
    qubits[i] = quantum::apply_gate(key.gates[i], qubits[i]);
  return qubits;
}

ThreePassResult run_three_pass(const BitString& sender_bits,
                               const ThreePassKey& sender_key,
                               const ThreePassKey& receiver_key, Rng& rng,
                               ChannelTap* tap) {
  ThreePassResult result;

  // Pass 1, sender -> receiver: payload encrypted under the sender key.
  std::vector<QubitState> wire = three_pass_encrypt(sender_bits, sender_key);
  if (tap) tap->on_pass(1, wire, rng);
  result.transcript.pass1 = wire;

  // Pass 2, receiver -> sender: receiver adds its own lock.
  wire = three_pass_step(std::move(wire), receiver_key);
  if (tap) tap->on_pass(2, wire, rng);
  result.transcript.pass2 = wire;

  // Pass 3, sender -> receiver: sender removes its lock.
  wire = three_pass_step(std::move(wire), sender_key.inverse());
  if (tap) tap->on_pass(3, wire, rng);
  result.transcript.pass3 = wire;

  // Receiver removes its lock and reads the payload.
  wire = three_pass_step(std::move(wire), receiver_key.inverse());
  BitString received(sender_bits.size());
  for (size_t i = 0; i < wire.size(); ++i) {
    auto m = quantum::measure(wire[i], MeasurementBasis::Computational, rng);
    received.set(i, m.outcome == 1);
  }
  result.received = std::move(received);
  return result;
}

}  // namespace qlb::crypto

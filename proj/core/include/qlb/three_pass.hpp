#pragma once

#include <memory>
#include <vector>

#include "qlb/bits.hpp"
#include "qlb/quantum.hpp"
#include "qlb/rng.hpp"

namespace qlb::crypto {

/// Per-position gate key for one leg of the three-pass exchange.
struct ThreePassKey {
  std::vector<quantum::PhaseGate> gates;

  static ThreePassKey random(size_t n, Rng& rng);
  ThreePassKey inverse() const;
  size_t size() const { return gates.size(); }
};

/// Adversary hook on the quantum channel. Called once per transmission
/// with the in-flight qubits; the tap may observe, measure, or replace
/// them in place. Pass numbers are 1..3.
///
/// Decoy-qubit screening is an extension point: a harness that wants it can
/// interleave decoys before invoking the channel and audit them afterwards;
/// the channel itself carries payload positions only.
class ChannelTap {
 public:
  virtual ~ChannelTap() = default;
  virtual void on_pass(int pass, std::vector<quantum::QubitState>& qubits,
                       Rng& rng) = 0;
};

/// Tap that measures every qubit of a chosen pass in a fixed basis.
class MeasuringTap : public ChannelTap {
 public:
  MeasuringTap(int pass, quantum::MeasurementBasis basis)
      : pass_(pass), basis_(basis) {}
  void on_pass(int pass, std::vector<quantum::QubitState>& qubits,
               Rng& rng) override;

 private:
  int pass_;
  quantum::MeasurementBasis basis_;
};

struct ThreePassTranscript {
  // Qubit lists as transmitted on each of the three passes (after any tap).
  std::vector<quantum::QubitState> pass1, pass2, pass3;
};

struct ThreePassResult {
  BitString received;
  ThreePassTranscript transcript;
};

/// Encodes bits as computational states and applies the sender key.
std::vector<quantum::QubitState> three_pass_encrypt(const BitString& bits,
                                                    const ThreePassKey& key);

/// Applies one key element-wise; decryption uses key.inverse().
std::vector<quantum::QubitState> three_pass_step(
    std::vector<quantum::QubitState> qubits, const ThreePassKey& key);

/// Full four-step run. With no tap the received bits equal the sent bits
/// exactly; the final measurement is in the computational basis.
ThreePassResult run_three_pass(const BitString& sender_bits,
                               const ThreePassKey& sender_key,
                               const ThreePassKey& receiver_key, Rng& rng,
                               ChannelTap* tap = nullptr);

}  // namespace qlb::crypto

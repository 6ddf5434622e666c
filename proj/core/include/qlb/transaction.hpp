#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qlb/bits.hpp"
#include "qlb/keypool.hpp"
#include "qlb/predicate.hpp"
#include "qlb/quantum.hpp"

namespace qlb::ledger {

using crypto::NodeId;

/// Per-verifier one-time authenticator. The sender draws fresh (S, r) from
/// the pairwise pool for each verifier; the offset pins the consumed range
/// so the verifier can replay the same key material exactly once.
struct MacEntry {
  NodeId verifier = 0;
  uint64_t pool_offset = 0;
  BitString digest;
};

struct QuantumCertificate {
  std::vector<quantum::QubitState> qubits;
};

enum class TxForm : uint8_t { Plain, Protected, General };
const char* to_string(TxForm form);

/// A transfer: redeems prior outputs in full and hands their value to the
/// receiver. Protections guard this transaction's own output; certificates
/// satisfy the protections of the outputs being redeemed. Quantum
/// certificates ride the quantum channel and stay out of the digest.
struct Transaction {
  NodeId sender = 0;
  std::vector<std::string> redeems;  // ids of prior ledger entries
  NodeId receiver = 0;
  TxForm form = TxForm::Plain;
  Predicate classical_protection;  // alpha
  Predicate quantum_protection;    // phi
  std::vector<Evidence> classical_certs;          // beta_i, per redeem
  std::vector<QuantumCertificate> quantum_certs;  // psi_i, per redeem
  std::vector<MacEntry> macs;
};

/// Digest input: fields in order (y_1..y_n, j[, alpha, phi][, beta_1..n]),
/// each length-prefixed with a 32-bit big-endian byte count, concatenated,
/// then expanded to bits most-significant-bit first. Plain transactions
/// hash (y..., j) only; certificates appear only in the general form, and
/// quantum certificates never enter the digest.
BitString canonical_digest_input(const Transaction& tx);

struct TransactionRequest {
  NodeId sender = 0;
  std::vector<std::string> redeems;
  NodeId receiver = 0;
  Predicate classical_protection = Predicate::constant(true);
  Predicate quantum_protection = Predicate::constant(true);
  std::vector<Evidence> classical_certs;
  std::vector<QuantumCertificate> quantum_certs;
  std::optional<TxForm> form;  // derived from the populated parts if absent
};

/// Builds the transaction and authenticates it toward every listed miner,
/// consuming fresh key material per pair. Throws std::invalid_argument on
/// structural errors (certificate count mismatch, bad form).
Transaction make_transaction(const TransactionRequest& request,
                             crypto::KeyPoolDirectory& sender_pools,
                             const std::vector<NodeId>& miners,
                             size_t digest_len);

}  // namespace qlb::ledger

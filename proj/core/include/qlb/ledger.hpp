#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "qlb/consensus.hpp"
#include "qlb/transaction.hpp"

namespace qlb::ledger {

struct LedgerEntry {
  std::string id;
  enum class Kind : uint8_t { Coinbase, Transfer } kind = Kind::Coinbase;
  NodeId recipient = 0;
  int64_t amount = 0;
  uint64_t round = 0;
  std::string note;  // coinbase provenance
  std::optional<Transaction> tx;
};

/// Append-only replica. Entry ids are assigned at admission from the
/// append sequence, so replicas that admit the same transactions in the
/// same order are byte-identical in canonical export.
class Ledger {
 public:
  const LedgerEntry* find(const std::string& id) const;
  bool is_redeemed(const std::string& id) const;
  int64_t balance(NodeId node) const;
  int64_t total_supply() const;     // sum of coinbase amounts
  int64_t total_unredeemed() const; // sum over live outputs
  size_t size() const { return entries_.size(); }
  const std::vector<LedgerEntry>& entries() const { return entries_; }

  /// Coinbase mint: the only way new value appears.
  std::string mint(NodeId recipient, int64_t amount, uint64_t round,
                   const std::string& note);

  /// Appends an already-validated transfer, marking its inputs redeemed.
  /// The transfer's value is the full value of everything it redeems.
  std::string append_transfer(const Transaction& tx, uint64_t round);

  /// Line-oriented canonical export used for replica comparison and the
  /// regression fixtures.
  std::string export_canonical() const;

 private:
  std::string next_id() const;
  std::vector<LedgerEntry> entries_;
  std::map<std::string, size_t> index_;
  std::set<std::string> redeemed_;
  std::map<NodeId, int64_t> balances_;
};

/// Convenience wrapper for reward minting across several ledger replicas
/// (every replica mints identically).
void mint_reward(std::vector<Ledger*>& replicas, const std::vector<NodeId>& agents,
                 int64_t amount, uint64_t round, const std::string& note);

// ---------------------------------------------------------------------------
// Validation

enum class RejectReason : uint8_t {
  None,
  Mac,
  Ownership,
  DoubleRedeem,
  ClassicalProtection,
  QuantumProtection,
};
const char* reason_code(RejectReason reason);

struct Verdict {
  bool admissible = false;
  RejectReason reason = RejectReason::None;
  std::string detail;
};

struct ValidationOptions {
  NodeId miner = 0;
  /// Measurement destroys a quantum certificate, so by default only the
  /// designated verifier of the round runs the quantum-protection check;
  /// the other miners validate the classical checks only.
  bool evaluate_quantum = false;
};

/// The five consistency checks, in order, first failure wins:
/// 1 authentication, 2 ownership, 3 no prior redemption, 4 classical
/// protections of the redeemed outputs, 5 quantum protections. Rejections
/// are verdicts, not exceptions. Quantum evaluation consumes tx.quantum_certs.
Verdict validate_transaction(Transaction& tx, const Ledger& ledger,
                             crypto::KeyPoolDirectory& miner_pools, Rng& rng,
                             const ValidationOptions& options);

/// Check 5 in isolation: measures the referenced certificate qubits and
/// combines outcomes per the protection tree. Consumes the certificate.
/// Out-of-range indices come back malformed (and false).
Predicate::EvalResult eval_quantum_protection(const Predicate& phi,
                                              std::vector<quantum::QubitState>& psi,
                                              Rng& rng);

// ---------------------------------------------------------------------------
// Commit pipeline

enum class CertificateMode : uint8_t {
  DesignatedVerifier,  // one rotating miner measures the single certificate
  PerMiner,            // sender prepares one certificate copy per miner
};

struct MinerQuorum {
  std::vector<NodeId> ids;
  std::vector<crypto::KeyPoolDirectory*> pools;
  std::vector<Ledger*> replicas;
  size_t size() const { return ids.size(); }
};

/// A submission: one transaction, possibly in conflicting versions when
/// the sender is double-spending. version_of_miner says which version each
/// miner was shown (all zero for honest submissions). Dishonest miners can
/// be modeled by assigning relay behaviors for the agreement round.
struct Submission {
  std::vector<Transaction> versions;
  std::vector<uint8_t> version_of_miner;
  consensus::SenderBehavior::Kind sender_kind =
      consensus::SenderBehavior::Kind::Honest;
  std::vector<consensus::ReceiverBehavior> miner_behaviors;  // default honest
};

struct CommitResult {
  bool appended = false;
  std::string tx_id;
  std::optional<int> agreed_version;
  consensus::RoundOutcome round;
  std::vector<Verdict> verdicts;  // per miner, for its shown version
};

/// Local validation at every miner, one agreement round over the supplied
/// list material (roster: submission sender + miners), then append to every
/// replica iff the round agreed on a version and at least half the miners
/// found that version admissible. An aborted round drops the transaction.
CommitResult submit_and_commit(Submission& submission, MinerQuorum& miners,
                               const std::optional<lists::CorrelatedListSet>& lists,
                               CertificateMode mode, uint64_t round_index,
                               Rng& rng);

}  // namespace qlb::ledger

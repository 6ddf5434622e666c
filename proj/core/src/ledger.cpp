#include "qlb/ledger.hpp"

#include <sstream>
#include <stdexcept>

#include "qlb/toeplitz.hpp"

namespace qlb::ledger {

namespace {

std::string format_id(size_t seq) {
  char buf[16];
  std::snprintf(buf, sizeof buf, "t%06zu", seq);
  return buf;
}

}  // namespace

const LedgerEntry* Ledger::find(const std::string& id) const {
  auto it = index_.find(id);
  return it == index_.end() ? nullptr : &entries_[it->second];
}

bool Ledger::is_redeemed(const std::string& id) const {
  return redeemed_.count(id) > 0;
}

int64_t Ledger::balance(NodeId node) const {
  auto it = balances_.find(node);
  return it == balances_.end() ? 0 : it->second;
}

int64_t Ledger::total_supply() const {
  int64_t total = 0;
  for (const LedgerEntry& e : entries_)
    if (e.kind == LedgerEntry::Kind::Coinbase) total += e.amount;
  return total;
}

int64_t Ledger::total_unredeemed() const {
  int64_t total = 0;
  for (const LedgerEntry& e : entries_)
    if (!redeemed_.count(e.id)) total += e.amount;
  return total;
}

std::string Ledger::next_id() const { return format_id(entries_.size()); }

std::string Ledger::mint(NodeId recipient, int64_t amount, uint64_t round,
                         const std::string& note) {
  if (amount < 0) throw std::invalid_argument("mint: negative amount");
  LedgerEntry entry;
  entry.id = next_id();
  entry.kind = LedgerEntry::Kind::Coinbase;
  entry.recipient = recipient;
  entry.amount = amount;
  entry.round = round;
  entry.note = note;
  index_[entry.id] = entries_.size();
  balances_[recipient] += amount;
  entries_.push_back(std::move(entry));
  return entries_.back().id;
}

std::string Ledger::append_transfer(const Transaction& tx, uint64_t round) {
  int64_t amount = 0;
  for (const std::string& y : tx.redeems) {
    const LedgerEntry* source = find(y);
    if (!source) throw std::invalid_argument("append_transfer: unknown input " + y);
    if (redeemed_.count(y))
      throw std::invalid_argument("append_transfer: double redemption of " + y);
    amount += source->amount;
  }
  LedgerEntry entry;
  entry.id = next_id();
  entry.kind = LedgerEntry::Kind::Transfer;
  entry.recipient = tx.receiver;
  entry.amount = amount;
  entry.round = round;
  entry.tx = tx;
  for (const std::string& y : tx.redeems) {
    redeemed_.insert(y);
    balances_[find(y)->recipient] -= find(y)->amount;
  }
  balances_[tx.receiver] += amount;
  index_[entry.id] = entries_.size();
  entries_.push_back(std::move(entry));
  return entries_.back().id;
}

std::string Ledger::export_canonical() const {
  std::ostringstream os;
  for (const LedgerEntry& e : entries_) {
    os << "entry id=" << e.id
       << " kind=" << (e.kind == LedgerEntry::Kind::Coinbase ? "coinbase" : "transfer")
       << " recipient=" << e.recipient << " amount=" << e.amount
       << " round=" << e.round;
    if (e.kind == LedgerEntry::Kind::Coinbase) {
      os << " note=" << (e.note.empty() ? "-" : e.note);
    } else {
      const Transaction& tx = *e.tx;
      os << " sender=" << tx.sender << " form=" << to_string(tx.form) << " redeems=";
      for (size_t i = 0; i < tx.redeems.size(); ++i)
        os << (i ? "," : "") << tx.redeems[i];
      os << " alpha=" << tx.classical_protection.serialize()
         << " phi=" << tx.quantum_protection.serialize();
      os << " beta=";
      if (tx.classical_certs.empty()) {
        os << "-";
      } else {
        for (size_t i = 0; i < tx.classical_certs.size(); ++i)
          os << (i ? "," : "")
             << BitString::from_bytes(canonical_evidence_bytes(tx.classical_certs[i]))
                    .to_hex();
      }
      os << " psi=";
      if (tx.quantum_certs.empty()) {
        os << "-";
      } else {
        for (size_t i = 0; i < tx.quantum_certs.size(); ++i)
          os << (i ? "," : "") << tx.quantum_certs[i].qubits.size();
      }
      os << " macs=";
      for (size_t i = 0; i < tx.macs.size(); ++i)
        os << (i ? "," : "") << tx.macs[i].verifier << ':' << tx.macs[i].pool_offset
           << ':' << tx.macs[i].digest.to_hex();
    }
    os << '\n';
  }
  return os.str();
}

void mint_reward(std::vector<Ledger*>& replicas, const std::vector<NodeId>& agents,
                 int64_t amount, uint64_t round, const std::string& note) {
  for (Ledger* ledger : replicas)
    for (NodeId agent : agents) ledger->mint(agent, amount, round, note);
}

const char* reason_code(RejectReason reason) {
  switch (reason) {
    case RejectReason::None: return "NONE";
    case RejectReason::Mac: return "MAC";
    case RejectReason::Ownership: return "OWNERSHIP";
    case RejectReason::DoubleRedeem: return "DOUBLE_REDEEM";
    case RejectReason::ClassicalProtection: return "CLASSICAL_PROTECTION";
    case RejectReason::QuantumProtection: return "QUANTUM_PROTECTION";
  }
  return "?";
}

Predicate::EvalResult eval_quantum_protection(const Predicate& phi,
                                              std::vector<quantum::QubitState>& psi,
                                              Rng& rng) {
  Predicate::EvalContext ctx;
  ctx.qubits = &psi;
  ctx.rng = &rng;
  return phi.evaluate(ctx);
}

Verdict validate_transaction(Transaction& tx, const Ledger& ledger,
                             crypto::KeyPoolDirectory& miner_pools, Rng& rng,
                             const ValidationOptions& options) {
  auto reject = [](RejectReason reason, std::string detail) {
    return Verdict{false, reason, std::move(detail)};
  };

  // 1. Message authentication against this miner's pairwise key material.
  const MacEntry* mac = nullptr;
  for (const MacEntry& entry : tx.macs)
    if (entry.verifier == options.miner) mac = &entry;
  if (!mac) return reject(RejectReason::Mac, "no authenticator for this miner");
  crypto::KeyPool& pool = miner_pools.with(tx.sender);
  if (mac->pool_offset < pool.cursor())
    return reject(RejectReason::Mac, "key material reuse");
  BitString msg = canonical_digest_input(tx);
  auto spec = crypto::toeplitz_spec_at(pool, mac->pool_offset,
                                       mac->digest.size(), msg.size());
  pool.advance_to(mac->pool_offset + spec.seed.size() + spec.pad.size());
  if (!(crypto::toeplitz_hash(spec, msg) == mac->digest))
    return reject(RejectReason::Mac, "digest mismatch");

  // 2. The sender must own every redeemed output.
  for (const std::string& y : tx.redeems) {
    const LedgerEntry* source = ledger.find(y);
    if (!source)
      return reject(RejectReason::Ownership, "unknown input " + y);
    if (source->recipient != tx.sender)
      return reject(RejectReason::Ownership, "sender does not own " + y);
  }

  // 3. No prior redemption, and no duplicate inputs inside the transaction.
  std::set<std::string> seen;
  for (const std::string& y : tx.redeems) {
    if (ledger.is_redeemed(y))
      return reject(RejectReason::DoubleRedeem, y + " already redeemed");
    if (!seen.insert(y).second)
      return reject(RejectReason::DoubleRedeem, y + " listed twice");
  }

  // 4. Classical protections of the redeemed outputs.
  for (size_t i = 0; i < tx.redeems.size(); ++i) {
    const LedgerEntry* source = ledger.find(tx.redeems[i]);
    if (source->kind == LedgerEntry::Kind::Coinbase || !source->tx) continue;
    const Predicate& alpha = source->tx->classical_protection;
    if (alpha.is_trivially_true()) continue;
    Evidence empty;
    Predicate::EvalContext ctx;
    ctx.evidence = i < tx.classical_certs.size() ? &tx.classical_certs[i] : &empty;
    auto result = alpha.evaluate(ctx);
    if (!result.value || result.malformed)
      return reject(RejectReason::ClassicalProtection,
                    "alpha of " + tx.redeems[i] + " not satisfied");
  }

  // 5. Quantum protections, designated verifier only; measuring consumes
  // the certificate.
  if (options.evaluate_quantum) {
    for (size_t i = 0; i < tx.redeems.size(); ++i) {
      const LedgerEntry* source = ledger.find(tx.redeems[i]);
      if (source->kind == LedgerEntry::Kind::Coinbase || !source->tx) continue;
      const Predicate& phi = source->tx->quantum_protection;
      if (phi.is_trivially_true()) continue;
      std::vector<quantum::QubitState> no_qubits;
      Predicate::EvalContext ctx;
      ctx.qubits = i < tx.quantum_certs.size() ? &tx.quantum_certs[i].qubits
                                               : &no_qubits;
      Rng measure_rng = rng.child("quantum-check", i);
      ctx.rng = &measure_rng;
      // Mixed predicates may also reference the matching classical record.
      Evidence empty;
      ctx.evidence = i < tx.classical_certs.size() ? &tx.classical_certs[i] : &empty;
      auto result = phi.evaluate(ctx);
      if (!result.value || result.malformed)
        return reject(RejectReason::QuantumProtection,
                      "phi of " + tx.redeems[i] + " not satisfied");
    }
  }

  return Verdict{true, RejectReason::None, ""};
}

CommitResult submit_and_commit(Submission& submission, MinerQuorum& miners,
                               const std::optional<lists::CorrelatedListSet>& lists,
                               CertificateMode mode, uint64_t round_index,
                               Rng& rng) {
  CommitResult result;
  size_t n_miners = miners.size();
  if (submission.versions.empty() || n_miners == 0)
    throw std::invalid_argument("submit_and_commit: empty submission or quorum");
  if (submission.version_of_miner.size() != n_miners)
    submission.version_of_miner.assign(n_miners, 0);

  // Designated verifier rotates with the round index.
  size_t designated = round_index % n_miners;

  // Per-miner certificate copies when the sender prepares one per miner.
  std::vector<std::vector<Transaction>> per_miner_copy;
  if (mode == CertificateMode::PerMiner) {
    per_miner_copy.assign(n_miners, submission.versions);
  }

  result.verdicts.resize(n_miners);
  for (size_t i = 0; i < n_miners; ++i) {
    uint8_t v = submission.version_of_miner[i];
    Transaction& tx = mode == CertificateMode::PerMiner
                          ? per_miner_copy[i][v]
                          : submission.versions[v];
    ValidationOptions options;
    options.miner = miners.ids[i];
    options.evaluate_quantum =
        mode == CertificateMode::PerMiner || i == designated;
    Rng validate_rng = rng.child("validate", i);
    result.verdicts[i] =
        validate_transaction(tx, *miners.replicas[i], *miners.pools[i],
                             validate_rng, options);
  }

  // One agreement round on the version bit; roster is sender + miners.
  consensus::RoundConfig config;
  config.n_agents = n_miners + 1;
  config.sender_value = 0;
  config.sender.kind = submission.sender_kind;
  config.sender.cells = submission.version_of_miner;
  config.receivers = submission.miner_behaviors;
  config.receivers.resize(n_miners);
  Rng round_rng = rng.child("commit-round", round_index);
  result.round = consensus::run_round(config, lists, round_rng);

  if (!result.round.consensus.has_value()) return result;  // dropped
  int v = *result.round.consensus;
  result.agreed_version = v;
  if (static_cast<size_t>(v) >= submission.versions.size()) return result;

  size_t admissible = 0;
  for (size_t i = 0; i < n_miners; ++i)
    if (submission.version_of_miner[i] == v && result.verdicts[i].admissible)
      ++admissible;
  if (2 * admissible < n_miners) return result;

  for (Ledger* replica : miners.replicas)
    result.tx_id = replica->append_transfer(submission.versions[v], round_index);
  result.appended = true;
  return result;
}

}  // namespace qlb::ledger

#include "qlb/transaction.hpp"

#include <stdexcept>

#include "qlb/toeplitz.hpp"

namespace qlb::ledger {

namespace {

void append_field(std::vector<uint8_t>& out, const std::string& field) {
  uint32_t len = static_cast<uint32_t>(field.size());
  out.push_back(static_cast<uint8_t>(len >> 24));
  out.push_back(static_cast<uint8_t>(len >> 16));
  out.push_back(static_cast<uint8_t>(len >> 8));
  out.push_back(static_cast<uint8_t>(len));
  out.insert(out.end(), field.begin(), field.end());
}

void append_field(std::vector<uint8_t>& out, const std::vector<uint8_t>& field) {
  uint32_t len = static_cast<uint32_t>(field.size());
  out.push_back(static_cast<uint8_t>(len >> 24));
  out.push_back(static_cast<uint8_t>(len >> 16));
  out.push_back(static_cast<uint8_t>(len >> 8));
  out.push_back(static_cast<uint8_t>(len));
  out.insert(out.end(), field.begin(), field.end());
}

}  // namespace

const char* to_string(TxForm form) {
  switch (form) {
    case TxForm::Plain: return "plain";
    case TxForm::Protected: return "protected";
    case TxForm::General: return "general";
  }
  return "?";
}

BitString canonical_digest_input(const Transaction& tx) {
  std::vector<uint8_t> bytes;
  for (const std::string& y : tx.redeems) append_field(bytes, y);
  append_field(bytes, std::to_string(tx.receiver));
  if (tx.form != TxForm::Plain) {
    append_field(bytes, tx.classical_protection.serialize());
    append_field(bytes, tx.quantum_protection.serialize());
  }
  if (tx.form == TxForm::General)
    for (const Evidence& beta : tx.classical_certs)
      append_field(bytes, canonical_evidence_bytes(beta));
  return BitString::from_bytes(bytes);
}

Transaction make_transaction(const TransactionRequest& request,
                             crypto::KeyPoolDirectory& sender_pools,
                             const std::vector<NodeId>& miners,
                             size_t digest_len) {
  Transaction tx;
  tx.sender = request.sender;
  tx.redeems = request.redeems;
  tx.receiver = request.receiver;
  tx.classical_protection = request.classical_protection;
  tx.quantum_protection = request.quantum_protection;
  tx.classical_certs = request.classical_certs;
  tx.quantum_certs = request.quantum_certs;

  bool has_certs = !tx.classical_certs.empty() || !tx.quantum_certs.empty();
  bool has_protections = !tx.classical_protection.is_trivially_true() ||
                         !tx.quantum_protection.is_trivially_true();
  tx.form = request.form.value_or(has_certs         ? TxForm::General
                                  : has_protections ? TxForm::Protected
                                                    : TxForm::Plain);
  if (tx.form == TxForm::Plain && (has_certs || has_protections))
    throw std::invalid_argument("plain transaction cannot carry protections/certificates");
  if (tx.form == TxForm::Protected && has_certs)
    throw std::invalid_argument("protected transaction cannot carry certificates");
  if (!tx.classical_certs.empty() && tx.classical_certs.size() != tx.redeems.size())
    throw std::invalid_argument("classical certificate count must match redeems");
  if (!tx.quantum_certs.empty() && tx.quantum_certs.size() != tx.redeems.size())
    throw std::invalid_argument("quantum certificate count must match redeems");

  BitString msg = canonical_digest_input(tx);
  for (NodeId miner : miners) {
    crypto::KeyPool& pool = sender_pools.with(miner);
    MacEntry entry;
    entry.verifier = miner;
    entry.pool_offset = pool.cursor();
    auto spec = crypto::draw_toeplitz_spec(pool, digest_len, msg.size());
    entry.digest = crypto::toeplitz_hash(spec, msg);
    tx.macs.push_back(std::move(entry));
  }
  return tx;
}

}  // namespace qlb::ledger

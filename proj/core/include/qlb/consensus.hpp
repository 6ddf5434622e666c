#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qlb/correlated_lists.hpp"
#include "qlb/rng.hpp"

namespace qlb::consensus {

/// Message exchanged during a round: either a claimed bit with the index
/// list of positions where it appears on the sender list, or the abort
/// mark meaning "I received an inconsistent message".
struct ConsensusMessage {
  bool bot = true;
  int bit = 0;
  std::vector<size_t> ids;

  static ConsensusMessage abort_mark() { return {}; }
  static ConsensusMessage value(int b, std::vector<size_t> positions) {
    ConsensusMessage m;
    m.bot = false;
    m.bit = b;
    m.ids = std::move(positions);
    return m;
  }
  bool operator==(const ConsensusMessage&) const = default;
};

/// An agent's output: a bit value or abort.
struct Decision {
  std::optional<int> value;
  bool aborted() const { return !value.has_value(); }
  static Decision abort() { return {}; }
  static Decision of(int v) { return {v}; }
  bool operator==(const Decision&) const = default;
};

struct SenderBehavior {
  enum class Kind { Honest, DoubleSpend, RandomEquivocate };
  Kind kind = Kind::Honest;
  /// DoubleSpend: receivers with cell[k] == 0 get the bit 0 message,
  /// the rest the bit 1 message. Defaults to alternating cells.
  std::vector<uint8_t> cells;
};

struct ReceiverBehavior {
  enum class Kind { Honest, TamperForge, SilentAbort };
  Kind kind = Kind::Honest;
};

struct RoundConfig {
  size_t n_agents = 0;  // sender plus receivers
  int sender_value = 0; // x_s
  SenderBehavior sender;
  std::vector<ReceiverBehavior> receivers;  // size n_agents - 1
};

struct TranscriptRecord {
  int step;     // 1 broadcast, 2 relay
  size_t from;  // agent index, 0 is the sender
  size_t to;
  ConsensusMessage msg;
};

struct RoundOutcome {
  /// Recorded outputs; index 0 is the sender's declared value, which is
  /// kept out of the consensus tally but counts for rewards.
  std::vector<Decision> decisions;
  std::optional<int> consensus;
  std::vector<size_t> rewarded;
  bool no_lists = false;
  std::vector<TranscriptRecord> transcript;
};

/// Step 1. Builds the per-receiver messages plus the sender's declared
/// output. An honest sender announces x_s with the full set of positions
/// where x_s appears (exactly m/3 of them) identically to everyone.
struct BroadcastResult {
  std::vector<ConsensusMessage> per_receiver;
  Decision declared;
};
BroadcastResult sender_broadcast(int x_s, const std::vector<uint8_t>& sender_list,
                                 const SenderBehavior& behavior,
                                 size_t n_receivers, Rng& rng);

/// Step 2 acceptance test: the message must carry exactly m/3 distinct
/// in-range indices and every indexed position of the receiver's list must
/// equal the claimed bit. Malformed input counts as inconsistent.
bool check_consistency(const ConsensusMessage& msg,
                       const std::vector<uint8_t>& receiver_list);

/// Step 2. What receiver k sends to each peer agent (entries for k itself
/// and the sender are left as abort marks and never delivered).
std::vector<ConsensusMessage> receiver_relay(size_t k,
                                             const ConsensusMessage& incoming,
                                             const std::vector<uint8_t>& own_list,
                                             const ReceiverBehavior& behavior,
                                             size_t n_agents, Rng& rng);

/// Step 3. Decision rule, evaluated on the full inbox of one receiver:
/// two consistent messages with different bits mean the sender equivocated
/// (abort); otherwise a consistent same-bit set of size >= 2 decides that
/// bit, with every outsider either inconsistent or an abort mark; anything
/// else aborts. The direct sender message counts toward the set.
Decision decide(const ConsensusMessage& direct,
                const std::vector<ConsensusMessage>& relayed,
                const std::vector<uint8_t>& own_list);

/// Full synchronous round over an in-memory bus. The recorded decision of
/// every receiver, honest or not, is the decision rule applied to its own
/// inbox; dishonest behavior shows up in what gets sent, not in the
/// bookkeeping. Consensus is reached when at least half the agents'
/// recorded receiver outputs agree on a bit.
RoundOutcome run_round(const RoundConfig& config,
                       const std::optional<lists::CorrelatedListSet>& lists,
                       Rng& rng);

/// Canonical single-line rendering used by determinism checks and reports.
std::string to_canonical_string(const RoundOutcome& outcome);

}  // namespace qlb::consensus

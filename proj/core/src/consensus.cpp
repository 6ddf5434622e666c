#include "qlb/consensus.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace qlb::consensus {

namespace {

std::vector<size_t> positions_of(const std::vector<uint8_t>& list, uint8_t v) {
  std::vector<size_t> out;
  for (size_t j = 0; j < list.size(); ++j)
    if (list[j] == v) out.push_back(j);
  return out;
}

/// m/3 distinct positions drawn from the candidate set.
std::vector<size_t> sample_distinct(const std::vector<size_t>& candidates,
                                    size_t count, Rng& rng) {
  std::vector<size_t> pool = candidates;
  std::vector<size_t> out;
  out.reserve(count);
  for (size_t i = 0; i < count && !pool.empty(); ++i) {
    size_t pick = rng.bounded(pool.size());
    out.push_back(pool[pick]);
    pool[pick] = pool.back();
    pool.pop_back();
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

BroadcastResult sender_broadcast(int x_s, const std::vector<uint8_t>& sender_list,
                                 const SenderBehavior& behavior,
                                 size_t n_receivers, Rng& rng) {
  BroadcastResult result;
  auto message_for = [&](int b) {
    return ConsensusMessage::value(b, positions_of(sender_list, static_cast<uint8_t>(b)));
  };

  switch (behavior.kind) {
    case SenderBehavior::Kind::Honest: {
      result.per_receiver.assign(n_receivers, message_for(x_s));
      result.declared = Decision::of(x_s);
      return result;
    }
    case SenderBehavior::Kind::DoubleSpend: {
      ConsensusMessage zero = message_for(0);
      ConsensusMessage one = message_for(1);
      for (size_t k = 0; k < n_receivers; ++k) {
        uint8_t cell = k < behavior.cells.size() ? behavior.cells[k] : k % 2;
        result.per_receiver.push_back(cell == 0 ? zero : one);
      }
      result.declared = Decision::of(rng.coin() ? 1 : 0);
      return result;
    }
    case SenderBehavior::Kind::RandomEquivocate: {
      for (size_t k = 0; k < n_receivers; ++k)
        result.per_receiver.push_back(message_for(rng.coin() ? 1 : 0));
      result.declared = Decision::of(rng.coin() ? 1 : 0);
      return result;
    }
  }
  return result;
}

bool check_consistency(const ConsensusMessage& msg,
                       const std::vector<uint8_t>& receiver_list) {
  if (msg.bot) return false;
  size_t m = receiver_list.size();
  if (msg.ids.size() != m / 3) return false;
  std::set<size_t> seen;
  for (size_t x : msg.ids) {
    if (x >= m) return false;               // malformed, treated as inconsistent
    if (!seen.insert(x).second) return false;
    if (receiver_list[x] != static_cast<uint8_t>(msg.bit)) return false;
  }
  return true;
}

std::vector<ConsensusMessage> receiver_relay(size_t k,
                                             const ConsensusMessage& incoming,
                                             const std::vector<uint8_t>& own_list,
                                             const ReceiverBehavior& behavior,
                                             size_t n_agents, Rng& rng) {
  std::vector<ConsensusMessage> out(n_agents, ConsensusMessage::abort_mark());
  auto send_all = [&](const ConsensusMessage& msg) {
    for (size_t j = 1; j < n_agents; ++j)
      if (j != k) out[j] = msg;
  };

  switch (behavior.kind) {
    case ReceiverBehavior::Kind::Honest:
      if (check_consistency(incoming, own_list))
        send_all(incoming);
      else
        send_all(ConsensusMessage::abort_mark());
      break;
    case ReceiverBehavior::Kind::SilentAbort:
      send_all(ConsensusMessage::abort_mark());
      break;
    case ReceiverBehavior::Kind::TamperForge: {
      // Claim the opposite bit with m/3 positions sampled from the
      // forger's own list. The forger cannot tell which of its candidate
      // positions are discord, which is exactly what the scheme exploits.
      int forged_bit = incoming.bot ? 1 : 1 - incoming.bit;
      auto candidates = positions_of(own_list, static_cast<uint8_t>(forged_bit));
      auto ids = sample_distinct(candidates, own_list.size() / 3, rng);
      send_all(ConsensusMessage::value(forged_bit, std::move(ids)));
      break;
    }
  }
  return out;
}

Decision decide(const ConsensusMessage& direct,
                const std::vector<ConsensusMessage>& relayed,
                const std::vector<uint8_t>& own_list) {
  bool seen[2] = {false, false};
  size_t consistent_count = 0;
  auto consider = [&](const ConsensusMessage& msg) {
    if (!msg.bot && check_consistency(msg, own_list)) {
      seen[msg.bit & 1] = true;
      ++consistent_count;
    }
  };
  consider(direct);
  for (const ConsensusMessage& msg : relayed) consider(msg);

  if (seen[0] && seen[1]) return Decision::abort();  // equivocation caught
  if (consistent_count >= 2) return Decision::of(seen[1] ? 1 : 0);
  return Decision::abort();
}

RoundOutcome run_round(const RoundConfig& config,
                       const std::optional<lists::CorrelatedListSet>& lists,
                       Rng& rng) {
  RoundOutcome outcome;
  size_t n = config.n_agents;
  outcome.decisions.assign(n, Decision::abort());

  if (!lists.has_value() || lists->receivers.size() != n - 1) {
    outcome.no_lists = true;
    return outcome;
  }

  Rng sender_rng = rng.child("sender");
  BroadcastResult broadcast = sender_broadcast(
      config.sender_value, lists->sender, config.sender, n - 1, sender_rng);
  const std::vector<ConsensusMessage>& direct = broadcast.per_receiver;
  outcome.decisions[0] = broadcast.declared;
  for (size_t k = 0; k < n - 1; ++k)
    outcome.transcript.push_back({1, 0, k + 1, direct[k]});

  // Step 2: every receiver relays before anyone decides (synchronous round).
  // relays[j][to] is what agent j sent to agent `to`.
  std::vector<std::vector<ConsensusMessage>> relays(n);
  for (size_t k = 1; k < n; ++k) {
    Rng relay_rng = rng.child("relay", k);
    relays[k] = receiver_relay(k, direct[k - 1], lists->receivers[k - 1],
                               config.receivers[k - 1], n, relay_rng);
    for (size_t j = 1; j < n; ++j)
      if (j != k) outcome.transcript.push_back({2, k, j, relays[k][j]});
  }

  // Step 3: everyone applies the decision rule to its own inbox.
  for (size_t k = 1; k < n; ++k) {
    std::vector<ConsensusMessage> inbox;
    for (size_t j = 1; j < n; ++j)
      if (j != k) inbox.push_back(relays[j][k]);
    outcome.decisions[k] = decide(direct[k - 1], inbox, lists->receivers[k - 1]);
  }

  // Step 4: tally over receiver outputs; the sender's declared value is
  // recorded but not tallied.
  size_t votes[2] = {0, 0};
  for (size_t k = 1; k < n; ++k)
    if (!outcome.decisions[k].aborted()) ++votes[*outcome.decisions[k].value & 1];
  for (int v : {0, 1}) {
    if (2 * votes[v] >= n) {
      outcome.consensus = v;
      break;
    }
  }
  if (outcome.consensus.has_value()) {
    for (size_t a = 0; a < n; ++a)
      if (outcome.decisions[a] == Decision::of(*outcome.consensus))
        outcome.rewarded.push_back(a);
  }
  return outcome;
}

std::string to_canonical_string(const RoundOutcome& outcome) {
  std::ostringstream os;
  os << "decisions=";
  for (const Decision& d : outcome.decisions)
    os << (d.aborted() ? 'A' : static_cast<char>('0' + *d.value));
  os << " consensus=";
  if (outcome.consensus.has_value())
    os << *outcome.consensus;
  else
    os << "none";
  os << " rewarded=";
  for (size_t i = 0; i < outcome.rewarded.size(); ++i)
    os << (i ? "," : "") << outcome.rewarded[i];
  if (outcome.no_lists) os << " no_lists";
  return os.str();
}

}  // namespace qlb::consensus

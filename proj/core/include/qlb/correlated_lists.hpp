#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "qlb/bits.hpp"
#include "qlb/keypool.hpp"
#include "qlb/rng.hpp"
#include "qlb/three_pass.hpp"

namespace qlb::lists {

using crypto::NodeId;

/// Trit values used on the sender list. 2 marks a discord position: the
/// receivers' bits there are independent fair coins, which is what makes
/// forged index lists detectable.
constexpr uint8_t kDiscord = 2;

/// One distributor's correlated lists for a roster of n agents: a trit
/// list for the consensus sender plus a bit list per receiver.
///
/// Invariants for a well-formed set of length m:
///  - m % 3 == 0 and the sender list holds exactly m/3 of each trit
///    (working lists additionally use m % 6 == 0);
///  - sender trit 0 forces every receiver bit to 0 at that position;
///  - sender trit 1 forces every receiver bit to 1;
///  - at discord positions receiver bits are independent fair coins.
struct CorrelatedListSet {
  size_t length = 0;
  std::vector<uint8_t> sender;                   // trits, size == length
  std::vector<std::vector<uint8_t>> receivers;   // bits, one list per receiver

  size_t agent_count() const { return receivers.size() + 1; }
};

/// Full material for one distribution round: the working segment used by
/// consensus and a sacrificial segment consumed by verification, so that
/// spot checks never disturb the working list's exact trit counts.
struct ListBatch {
  CorrelatedListSet working;
  CorrelatedListSet sacrificial;
};

/// Generates a working set. n_agents >= 3, m a positive multiple of 6.
CorrelatedListSet generate_correlated_lists(size_t n_agents, size_t m, Rng& rng);

/// Same construction for the sacrificial segment, which only needs exact
/// thirds (length % 3 == 0).
CorrelatedListSet generate_thirds_segment(size_t n_agents, size_t len, Rng& rng);

/// Working segment of length m plus sacrificial segment of m/2.
ListBatch generate_batch(size_t n_agents, size_t m, Rng& rng);

/// Exhaustive structural check of items the construction promises
/// (lengths, exact counts, forced columns). Discord randomness is
/// statistical and tested separately.
bool satisfies_specification(const CorrelatedListSet& set);

class MalformedPayload : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// 2-bit injective trit transport encoding: 0->00, 1->01, 2->10.
BitString encode_trits(const std::vector<uint8_t>& trits);
/// Throws MalformedPayload on the reserved pair 11 or odd length.
std::vector<uint8_t> decode_trits(const BitString& bits);

// ---------------------------------------------------------------------------
// Distributor adversaries

enum class DistributorStrategy {
  Honest,
  CountSkew,         // every sender trit set to discord; count check trips
  CorrelationBreak,  // receiver bits flipped with prob 1/2 at forced positions
  TargetReceiver,    // one receiver anti-correlated at sender-trit-1 positions
  RandomNoise,       // receiver bits redrawn as independent coins
};

const char* to_string(DistributorStrategy s);
std::optional<DistributorStrategy> distributor_strategy_from_string(
    const std::string& name);

struct DistributorBehavior {
  DistributorStrategy strategy = DistributorStrategy::Honest;
  size_t target_receiver = 0;  // index into receivers, TargetReceiver only
};

/// Applies the corruption to a full batch (working + sacrificial), the way
/// a dishonest distributor would hand out skewed material end to end.
ListBatch corrupt_batch(const ListBatch& batch, const DistributorBehavior& b,
                        Rng& rng);

// ---------------------------------------------------------------------------
// Distribution over the quantum channel

struct DeliveredBatch {
  ListBatch lists;          // what the agents actually received
  /// One channel transcript per lane (sender lane first, then receivers),
  /// kept for adversary-injection experiments.
  std::vector<crypto::ThreePassTranscript> transcripts;
  bool delivery_error = false;
  std::string error_detail;
};

/// Sends every agent its own list through the three-pass channel (trits
/// travel 2-bits-per-position). Channel failures surface as a delivery
/// error attributed to the distributor rather than an exception.
DeliveredBatch distribute_batch(const ListBatch& batch, Rng& rng,
                                crypto::ChannelTap* tap = nullptr);

// ---------------------------------------------------------------------------
// Verification and classification

struct VerificationSample {
  std::vector<uint8_t> sender_trits;                // revealed at the sample
  std::vector<std::vector<uint8_t>> receiver_bits;  // [receiver][position]
};

/// One verdict per receiver: false means the receiver reports the
/// distributor as inconsistent. A receiver flags inconsistency when a
/// sampled forced position disagrees with the revealed trit, or when the
/// revealed trit counts drift more than 3 sigma from exact thirds.
std::vector<bool> verify_distribution(const VerificationSample& sample);

/// Builds the sample from delivered sacrificial lists at given positions.
VerificationSample take_sample(const CorrelatedListSet& sacrificial,
                               const std::vector<size_t>& positions);

/// Distributor is corrupted when strictly more than theta * n_agents
/// receivers report it inconsistent.
bool classify_corrupted(const std::vector<bool>& receiver_consistent,
                        double theta, size_t n_agents);

/// Sequential composition of the honest distributors' working lists, in
/// distributor order. Empty input means consensus has no list material and
/// must abort, reported as nullopt.
std::optional<CorrelatedListSet> compose_lists(
    const std::vector<CorrelatedListSet>& honest_sets);

}  // namespace qlb::lists

#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "qlb/correlated_lists.hpp"
#include "qlb/rng.hpp"

using namespace qlb;
using namespace qlb::lists;

TEST_CASE("generation enforces the parameter constraints") {
  Rng rng(1);
  CHECK_THROWS_AS((void)generate_correlated_lists(4, 7, rng), std::invalid_argument);
  CHECK_THROWS_AS((void)generate_correlated_lists(2, 6, rng), std::invalid_argument);
  CHECK_THROWS_AS((void)generate_correlated_lists(4, 0, rng), std::invalid_argument);
}

TEST_CASE("minimal set: sender list is a permutation of 001122") {
  Rng rng(2);
  auto set = generate_correlated_lists(3, 6, rng);
  std::vector<uint8_t> sorted = set.sender;
  std::sort(sorted.begin(), sorted.end());
  CHECK(sorted == std::vector<uint8_t>{0, 0, 1, 1, 2, 2});
}

TEST_CASE("generated sets satisfy every structural item, exhaustively") {
  Rng rng(3);
  for (int trial = 0; trial < 100; ++trial) {
    auto set = generate_correlated_lists(3 + trial % 6, 6 * (1 + trial % 10), rng);
    CHECK(satisfies_specification(set));
    // Forced columns, checked against the invariant definition directly.
    for (size_t j = 0; j < set.length; ++j)
      if (set.sender[j] != kDiscord)
        for (const auto& list : set.receivers) CHECK(list[j] == set.sender[j]);
  }
}

TEST_CASE("discord positions carry fair independent coins, 3 sigma") {
  Rng rng(41);
  auto set = generate_correlated_lists(6, 600, rng);
  // 200 discord positions; per-receiver frequency of ones within the
  // 3-sigma binomial band around 1/2, computed here rather than assumed.
  double sigma = std::sqrt(0.25 / 200.0);
  for (const auto& list : set.receivers) {
    size_t ones = 0, discord = 0;
    for (size_t j = 0; j < set.length; ++j)
      if (set.sender[j] == kDiscord) {
        ++discord;
        ones += list[j];
      }
    CHECK(discord == 200);
    double freq = static_cast<double>(ones) / static_cast<double>(discord);
    CHECK(freq > 0.5 - 3 * sigma);
    CHECK(freq < 0.5 + 3 * sigma);
  }
}

TEST_CASE("trit transport encoding") {
  CHECK(encode_trits({}).size() == 0);
  CHECK(encode_trits({0, 1, 2}).to_binary_text() == "000110");
  CHECK_THROWS_AS((void)decode_trits(BitString::from_binary_text("11")),
                  MalformedPayload);
  CHECK_THROWS_AS((void)decode_trits(BitString::from_binary_text("010")),
                  MalformedPayload);

  Rng rng(5);
  std::vector<uint8_t> trits(10000);
  for (auto& t : trits) t = static_cast<uint8_t>(rng.bounded(3));
  CHECK(decode_trits(encode_trits(trits)) == trits);
}

TEST_CASE("honest distribution is lossless") {
  Rng rng(6);
  auto batch = generate_batch(5, 30, rng);
  auto delivered = distribute_batch(batch, rng);
  REQUIRE_FALSE(delivered.delivery_error);
  CHECK(delivered.lists.working.sender == batch.working.sender);
  CHECK(delivered.lists.sacrificial.sender == batch.sacrificial.sender);
  for (size_t k = 0; k < batch.working.receivers.size(); ++k) {
    CHECK(delivered.lists.working.receivers[k] == batch.working.receivers[k]);
    CHECK(delivered.lists.sacrificial.receivers[k] == batch.sacrificial.receivers[k]);
  }
}

TEST_CASE("honest lists never produce a false alarm") {
  Rng rng(7);
  for (int round = 0; round < 1000; ++round) {
    auto batch = generate_batch(4, 12, rng);
    std::vector<size_t> positions(batch.sacrificial.length);
    for (size_t p = 0; p < positions.size(); ++p) positions[p] = p;
    auto reports = verify_distribution(take_sample(batch.sacrificial, positions));
    for (bool consistent : reports) CHECK(consistent);
  }
}

TEST_CASE("all-discord sender list trips the count check at sample >= 30") {
  Rng rng(8);
  auto batch = generate_batch(5, 60, rng);
  DistributorBehavior behavior;
  behavior.strategy = DistributorStrategy::CountSkew;
  auto corrupted = corrupt_batch(batch, behavior, rng);
  std::vector<size_t> positions(corrupted.sacrificial.length);  // s = 30
  for (size_t p = 0; p < positions.size(); ++p) positions[p] = p;
  auto reports = verify_distribution(take_sample(corrupted.sacrificial, positions));
  for (bool consistent : reports) CHECK_FALSE(consistent);
}

TEST_CASE("anti-correlated receiver reports inconsistent, Monte Carlo") {
  // The targeted receiver sees a violation unless the sample has no
  // sender-trit-1 positions; with s = 30 that never happens in practice.
  Rng rng(9);
  size_t flagged = 0;
  const int rounds = 500;
  for (int round = 0; round < rounds; ++round) {
    auto batch = generate_batch(4, 60, rng);
    DistributorBehavior behavior;
    behavior.strategy = DistributorStrategy::TargetReceiver;
    behavior.target_receiver = 1;
    auto corrupted = corrupt_batch(batch, behavior, rng);
    std::vector<size_t> positions(corrupted.sacrificial.length);
    for (size_t p = 0; p < positions.size(); ++p) positions[p] = p;
    auto reports = verify_distribution(take_sample(corrupted.sacrificial, positions));
    CHECK(reports[0]);
    CHECK(reports[2]);
    if (!reports[1]) ++flagged;
  }
  CHECK(flagged == rounds);
}

TEST_CASE("random-noise receivers violate forced positions at the oracle rate") {
  // Brute-force sampling oracle: a noisy bit violates a forced position
  // with probability 1/2; two thirds of positions are forced, so the
  // expected violating fraction is 1/3 of sampled positions per receiver.
  Rng rng(10);
  size_t violations = 0, positions_total = 0;
  for (int round = 0; round < 200; ++round) {
    auto batch = generate_batch(3, 60, rng);
    DistributorBehavior behavior;
    behavior.strategy = DistributorStrategy::RandomNoise;
    auto corrupted = corrupt_batch(batch, behavior, rng);
    const auto& sac = corrupted.sacrificial;
    for (size_t j = 0; j < sac.length; ++j) {
      ++positions_total;
      if (sac.sender[j] != kDiscord && sac.receivers[0][j] != sac.sender[j])
        ++violations;
    }
  }
  double rate = static_cast<double>(violations) / positions_total;
  CHECK(rate == doctest::Approx(1.0 / 3.0).epsilon(0.08));
}

TEST_CASE("classification threshold is strict") {
  // n = 10 agents, theta = 0.3: strictly more than 3 reports required.
  auto reports_with = [](size_t inconsistent, size_t total) {
    std::vector<bool> reports(total, true);
    for (size_t i = 0; i < inconsistent; ++i) reports[i] = false;
    return reports;
  };
  CHECK_FALSE(classify_corrupted(reports_with(0, 9), 0.3, 10));
  CHECK_FALSE(classify_corrupted(reports_with(3, 9), 0.3, 10));
  CHECK(classify_corrupted(reports_with(4, 9), 0.3, 10));
  // theta = 0 still tolerates zero reports only.
  CHECK(classify_corrupted(reports_with(1, 9), 0.0, 10));
  CHECK_FALSE(classify_corrupted(reports_with(0, 9), 0.0, 10));
}

TEST_CASE("composition concatenates in distributor order") {
  Rng rng(11);
  auto a = generate_correlated_lists(4, 6, rng);
  auto b = generate_correlated_lists(4, 6, rng);
  auto composed = compose_lists({a, b});
  REQUIRE(composed.has_value());
  CHECK(composed->length == 12);
  for (size_t j = 0; j < 6; ++j) {
    CHECK(composed->sender[j] == a.sender[j]);
    CHECK(composed->sender[6 + j] == b.sender[j]);
  }
  CHECK(satisfies_specification(*composed));

  auto single = compose_lists({a});
  CHECK(single->sender == a.sender);

  CHECK_FALSE(compose_lists({}).has_value());
}

TEST_CASE("composition preserves counts additively") {
  Rng rng(12);
  std::vector<CorrelatedListSet> sets;
  for (int d = 0; d < 5; ++d) sets.push_back(generate_correlated_lists(4, 12, rng));
  auto composed = compose_lists(sets);
  size_t counts[3] = {0, 0, 0};
  for (uint8_t t : composed->sender) ++counts[t];
  CHECK(counts[0] == 5 * 4);
  CHECK(counts[1] == 5 * 4);
  CHECK(counts[2] == 5 * 4);
}

namespace {

// Tap that overwrites every pass-3 qubit with |1>, so the receiver decodes
// an all-ones payload; on the sender lane that is the reserved trit pair.
class JammingTap : public qlb::crypto::ChannelTap {
 public:
  void on_pass(int pass, std::vector<qlb::quantum::QubitState>& qubits,
               qlb::Rng&) override {
    if (pass != 3) return;
    for (auto& q : qubits)
      q = qlb::quantum::basis_state(qlb::quantum::StateLabel::One);
  }
};

}  // namespace

TEST_CASE("channel corruption surfaces as a delivery error") {
  Rng rng(13);
  auto batch = generate_batch(4, 12, rng);
  JammingTap tap;
  auto delivered = distribute_batch(batch, rng, &tap);
  CHECK(delivered.delivery_error);
  CHECK_FALSE(delivered.error_detail.empty());
}

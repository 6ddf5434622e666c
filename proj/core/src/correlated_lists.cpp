#include "qlb/correlated_lists.hpp"

#include <algorithm>
#include <cmath>

namespace qlb::lists {

namespace {

void shuffle_trits(std::vector<uint8_t>& trits, Rng& rng) {
  // Fisher-Yates with the portable bounded draw.
  for (size_t i = trits.size(); i > 1; --i)
    std::swap(trits[i - 1], trits[rng.bounded(i)]);
}

CorrelatedListSet generate_exact_thirds(size_t n_agents, size_t len, Rng& rng) {
  CorrelatedListSet set;
  set.length = len;
  set.sender.reserve(len);
  for (uint8_t t : {0, 1, 2})
    set.sender.insert(set.sender.end(), len / 3, t);
  shuffle_trits(set.sender, rng);

  set.receivers.assign(n_agents - 1, std::vector<uint8_t>(len, 0));
  for (size_t j = 0; j < len; ++j) {
    for (size_t k = 0; k < set.receivers.size(); ++k) {
      uint8_t bit;
      switch (set.sender[j]) {
        case 0: bit = 0; break;
        case 1: bit = 1; break;
        default: bit = rng.coin() ? 1 : 0; break;
      }
      set.receivers[k][j] = bit;
    }
  }
  return set;
}

}  // namespace

CorrelatedListSet generate_correlated_lists(size_t n_agents, size_t m, Rng& rng) {
  if (n_agents < 3)
    throw std::invalid_argument("correlated lists need at least 3 agents");
  if (m == 0 || m % 6 != 0)
    throw std::invalid_argument("m must be a positive multiple of 6");
  return generate_exact_thirds(n_agents, m, rng);
}

CorrelatedListSet generate_thirds_segment(size_t n_agents, size_t len, Rng& rng) {
  if (n_agents < 3)
    throw std::invalid_argument("correlated lists need at least 3 agents");
  if (len == 0 || len % 3 != 0)
    throw std::invalid_argument("segment length must be a positive multiple of 3");
  return generate_exact_thirds(n_agents, len, rng);
}

ListBatch generate_batch(size_t n_agents, size_t m, Rng& rng) {
  ListBatch batch;
  batch.working = generate_correlated_lists(n_agents, m, rng);
  batch.sacrificial = generate_thirds_segment(n_agents, m / 2, rng);
  return batch;
}

bool satisfies_specification(const CorrelatedListSet& set) {
  if (set.sender.size() != set.length) return false;
  size_t counts[3] = {0, 0, 0};
  for (uint8_t t : set.sender) {
    if (t > 2) return false;
    ++counts[t];
  }
  if (counts[0] != set.length / 3 || counts[1] != set.length / 3 ||
      counts[2] != set.length / 3 || set.length % 3 != 0)
    return false;
  for (const auto& list : set.receivers) {
    if (list.size() != set.length) return false;
    for (size_t j = 0; j < set.length; ++j) {
      if (list[j] > 1) return false;
      if (set.sender[j] != kDiscord && list[j] != set.sender[j]) return false;
    }
  }
  return true;
}

BitString encode_trits(const std::vector<uint8_t>& trits) {
  BitString out;
  for (uint8_t t : trits) {
    if (t > 2) throw std::invalid_argument("trit out of range");
    out.push_back(t == 2);
    out.push_back(t == 1);
  }
  return out;
}

std::vector<uint8_t> decode_trits(const BitString& bits) {
  if (bits.size() % 2 != 0)
    throw MalformedPayload("trit payload has odd bit length");
  std::vector<uint8_t> out;
  out.reserve(bits.size() / 2);
  for (size_t i = 0; i < bits.size(); i += 2) {
    bool hi = bits.get(i), lo = bits.get(i + 1);
    if (hi && lo) throw MalformedPayload("reserved trit encoding 11");
    out.push_back(hi ? 2 : (lo ? 1 : 0));
  }
  return out;
}

const char* to_string(DistributorStrategy s) {
  switch (s) {
    case DistributorStrategy::Honest: return "honest";
    case DistributorStrategy::CountSkew: return "count-skew";
    case DistributorStrategy::CorrelationBreak: return "correlation-break";
    case DistributorStrategy::TargetReceiver: return "target-receiver";
    case DistributorStrategy::RandomNoise: return "random-noise";
  }
  return "?";
}

std::optional<DistributorStrategy> distributor_strategy_from_string(
    const std::string& name) {
  for (DistributorStrategy s :
       {DistributorStrategy::Honest, DistributorStrategy::CountSkew,
        DistributorStrategy::CorrelationBreak, DistributorStrategy::TargetReceiver,
        DistributorStrategy::RandomNoise})
    if (name == to_string(s)) return s;
  return std::nullopt;
}

namespace {

void corrupt_set(CorrelatedListSet& set, const DistributorBehavior& b, Rng& rng) {
  switch (b.strategy) {
    case DistributorStrategy::Honest:
      break;
    case DistributorStrategy::CountSkew:
      std::fill(set.sender.begin(), set.sender.end(), kDiscord);
      break;
    case DistributorStrategy::CorrelationBreak:
      for (auto& list : set.receivers)
        for (size_t j = 0; j < set.length; ++j)
          if (set.sender[j] != kDiscord && rng.coin()) list[j] ^= 1;
      break;
    case DistributorStrategy::TargetReceiver: {
      if (set.receivers.empty()) break;
      auto& list = set.receivers[b.target_receiver % set.receivers.size()];
      for (size_t j = 0; j < set.length; ++j)
        if (set.sender[j] == 1) list[j] = 0;
      break;
    }
    case DistributorStrategy::RandomNoise:
      for (auto& list : set.receivers)
        for (size_t j = 0; j < set.length; ++j) list[j] = rng.coin() ? 1 : 0;
      break;
  }
}

}  // namespace

ListBatch corrupt_batch(const ListBatch& batch, const DistributorBehavior& b,
                        Rng& rng) {
  ListBatch out = batch;
  corrupt_set(out.working, b, rng);
  corrupt_set(out.sacrificial, b, rng);
  return out;
}

DeliveredBatch distribute_batch(const ListBatch& batch, Rng& rng,
                                crypto::ChannelTap* tap) {
  DeliveredBatch out;
  size_t n_receivers = batch.working.receivers.size();
  out.lists.working.length = batch.working.length;
  out.lists.sacrificial.length = batch.sacrificial.length;
  out.lists.working.receivers.resize(n_receivers);
  out.lists.sacrificial.receivers.resize(n_receivers);

  auto send_bits = [&](const BitString& payload, uint64_t lane) -> BitString {
    Rng ch = rng.child("channel", lane);
    auto k1 = crypto::ThreePassKey::random(payload.size(), ch);
    auto k2 = crypto::ThreePassKey::random(payload.size(), ch);
    auto result = crypto::run_three_pass(payload, k1, k2, ch, tap);
    out.transcripts.push_back(std::move(result.transcript));
    return result.received;
  };

  try {
    // Sender lane: working trits then sacrificial trits.
    std::vector<uint8_t> trits = batch.working.sender;
    trits.insert(trits.end(), batch.sacrificial.sender.begin(),
                 batch.sacrificial.sender.end());
    std::vector<uint8_t> got = decode_trits(send_bits(encode_trits(trits), 0));
    out.lists.working.sender.assign(got.begin(), got.begin() + batch.working.length);
    out.lists.sacrificial.sender.assign(got.begin() + batch.working.length, got.end());

    for (size_t k = 0; k < n_receivers; ++k) {
      BitString payload;
      for (uint8_t bit : batch.working.receivers[k]) payload.push_back(bit);
      for (uint8_t bit : batch.sacrificial.receivers[k]) payload.push_back(bit);
      BitString received = send_bits(payload, k + 1);
      for (size_t j = 0; j < batch.working.length; ++j)
        out.lists.working.receivers[k].push_back(received.get(j) ? 1 : 0);
      for (size_t j = 0; j < batch.sacrificial.length; ++j)
        out.lists.sacrificial.receivers[k].push_back(
            received.get(batch.working.length + j) ? 1 : 0);
    }
  } catch (const MalformedPayload& e) {
    out.delivery_error = true;
    out.error_detail = e.what();
  }
  return out;
}

VerificationSample take_sample(const CorrelatedListSet& sacrificial,
                               const std::vector<size_t>& positions) {
  VerificationSample sample;
  sample.receiver_bits.resize(sacrificial.receivers.size());
  for (size_t p : positions) {
    sample.sender_trits.push_back(sacrificial.sender.at(p));
    for (size_t k = 0; k < sacrificial.receivers.size(); ++k)
      sample.receiver_bits[k].push_back(sacrificial.receivers[k].at(p));
  }
  return sample;
}

std::vector<bool> verify_distribution(const VerificationSample& sample) {
  size_t s = sample.sender_trits.size();
  size_t counts[3] = {0, 0, 0};
  bool counts_ok = true;
  for (uint8_t t : sample.sender_trits) {
    if (t > 2) {
      counts_ok = false;
      break;
    }
    ++counts[t];
  }
  if (counts_ok && s > 0) {
    // 3-sigma binomial band around exact thirds; false-alarm rate < 1%.
    double expect = static_cast<double>(s) / 3.0;
    double band = 3.0 * std::sqrt(static_cast<double>(s) * (1.0 / 3.0) * (2.0 / 3.0));
    for (size_t t = 0; t < 3; ++t)
      if (std::abs(static_cast<double>(counts[t]) - expect) > band) counts_ok = false;
  }

  std::vector<bool> consistent(sample.receiver_bits.size(), true);
  for (size_t k = 0; k < sample.receiver_bits.size(); ++k) {
    if (!counts_ok) {
      consistent[k] = false;
      continue;
    }
    for (size_t j = 0; j < s; ++j) {
      uint8_t t = sample.sender_trits[j];
      if (t != kDiscord && sample.receiver_bits[k][j] != t) {
        consistent[k] = false;
        break;
      }
    }
  }
  return consistent;
}

bool classify_corrupted(const std::vector<bool>& receiver_consistent,
                        double theta, size_t n_agents) {
  size_t inconsistent = 0;
  for (bool ok : receiver_consistent)
    if (!ok) ++inconsistent;
  // Strictly more than theta * n reports; epsilon guards the float product.
  return static_cast<double>(inconsistent) >
         theta * static_cast<double>(n_agents) + 1e-9;
}

std::optional<CorrelatedListSet> compose_lists(
    const std::vector<CorrelatedListSet>& honest_sets) {
  if (honest_sets.empty()) return std::nullopt;
  CorrelatedListSet out;
  out.receivers.resize(honest_sets.front().receivers.size());
  for (const auto& set : honest_sets) {
    if (set.receivers.size() != out.receivers.size())
      throw std::invalid_argument("compose_lists: roster mismatch");
    out.length += set.length;
    out.sender.insert(out.sender.end(), set.sender.begin(), set.sender.end());
    for (size_t k = 0; k < out.receivers.size(); ++k)
      out.receivers[k].insert(out.receivers[k].end(), set.receivers[k].begin(),
                              set.receivers[k].end());
  }
  return out;
}

}  // namespace qlb::lists

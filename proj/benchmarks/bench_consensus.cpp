#include <benchmark/benchmark.h>

#include "qlb/consensus.hpp"
#include "qlb/correlated_lists.hpp"
#include "qlb/rng.hpp"

namespace {

void BM_GenerateLists(benchmark::State& state) {
  size_t n = static_cast<size_t>(state.range(0));
  size_t m = static_cast<size_t>(state.range(1));
  qlb::Rng rng(13);
  for (auto _ : state) {
    auto set = qlb::lists::generate_correlated_lists(n, m, rng);
    benchmark::DoNotOptimize(set);
  }
}

void BM_ConsensusRound(benchmark::State& state) {
  size_t n = static_cast<size_t>(state.range(0));
  size_t m = static_cast<size_t>(state.range(1));
  size_t tamper = static_cast<size_t>(state.range(2));
  qlb::Rng rng(17);
  auto lists_set = qlb::lists::generate_correlated_lists(n, m, rng);
  qlb::consensus::RoundConfig config;
  config.n_agents = n;
  config.sender_value = 1;
  config.receivers.assign(n - 1, {});
  for (size_t k = n - 1 - tamper; k < n - 1; ++k)
    config.receivers[k].kind =
        qlb::consensus::ReceiverBehavior::Kind::TamperForge;
  uint64_t round = 0;
  for (auto _ : state) {
    qlb::Rng round_rng = rng.child("round", round++);
    auto outcome = qlb::consensus::run_round(config, lists_set, round_rng);
    benchmark::DoNotOptimize(outcome);
  }
  state.SetItemsProcessed(state.iterations());
}

}  // namespace

BENCHMARK(BM_GenerateLists)->Args({6, 60})->Args({11, 120})->Args({11, 600});
BENCHMARK(BM_ConsensusRound)
    ->Args({6, 60, 0})
    ->Args({11, 120, 0})
    ->Args({11, 120, 7});

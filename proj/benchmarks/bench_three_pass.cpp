#include <benchmark/benchmark.h>

#include "qlb/bits.hpp"
#include "qlb/rng.hpp"
#include "qlb/three_pass.hpp"

namespace {

void BM_ThreePassRoundTrip(benchmark::State& state) {
  size_t bits = static_cast<size_t>(state.range(0));
  qlb::Rng rng(11);
  qlb::BitString payload(bits);
  for (size_t i = 0; i < bits; ++i) payload.set(i, rng.coin());
  for (auto _ : state) {
    auto k1 = qlb::crypto::ThreePassKey::random(bits, rng);
    auto k2 = qlb::crypto::ThreePassKey::random(bits, rng);
    auto result = qlb::crypto::run_three_pass(payload, k1, k2, rng);
    benchmark::DoNotOptimize(result);
  }
  state.SetItemsProcessed(state.iterations() * bits);
}

}  // namespace

BENCHMARK(BM_ThreePassRoundTrip)->Arg(64)->Arg(256)->Arg(1024);

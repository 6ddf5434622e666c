#include <benchmark/benchmark.h>

#include "qlb/qbc.hpp"
#include "qlb/rng.hpp"

namespace {

void BM_QbcSession(benchmark::State& state) {
  qlb::qbc::SessionParams params;
  params.n = static_cast<size_t>(state.range(0));
  params.sequences = 5;
  params.min_relevant = params.n / 8;
  params.commit_value = 2;
  qlb::Rng rng(19);
  uint64_t session = 0;
  for (auto _ : state) {
    qlb::Rng session_rng = rng.child("s", session++);
    auto result = qlb::qbc::run_session(params, qlb::qbc::AliceStrategy::Honest,
                                        qlb::qbc::BobStrategy::Honest,
                                        session_rng);
    benchmark::DoNotOptimize(result);
  }
  state.SetItemsProcessed(state.iterations());
}

}  // namespace

BENCHMARK(BM_QbcSession)->Arg(16)->Arg(40)->Arg(96);

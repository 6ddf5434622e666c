#include <benchmark/benchmark.h>

#include "qlb/bits.hpp"
#include "qlb/keypool.hpp"
#include "qlb/rng.hpp"
#include "qlb/toeplitz.hpp"

namespace {

void BM_ToeplitzHash(benchmark::State& state) {
  size_t digest_len = static_cast<size_t>(state.range(0));
  size_t msg_len = static_cast<size_t>(state.range(1));
  qlb::crypto::KeyPool pool(1, 2, 42);
  auto spec = qlb::crypto::draw_toeplitz_spec(pool, digest_len, msg_len);
  qlb::Rng rng(7);
  qlb::BitString msg(msg_len);
  for (size_t i = 0; i < msg_len; ++i) msg.set(i, rng.coin());
  for (auto _ : state) {
    auto digest = qlb::crypto::toeplitz_hash(spec, msg);
    benchmark::DoNotOptimize(digest);
  }
  state.SetItemsProcessed(state.iterations());
}

void BM_KeyPoolDraw(benchmark::State& state) {
  qlb::crypto::KeyPool pool(1, 2, 42);
  size_t bits = static_cast<size_t>(state.range(0));
  for (auto _ : state) {
    auto drawn = pool.draw(bits);
    benchmark::DoNotOptimize(drawn);
  }
  state.SetBytesProcessed(state.iterations() * bits / 8);
}

}  // namespace

BENCHMARK(BM_ToeplitzHash)->Args({64, 256})->Args({128, 512})->Args({128, 4096});
BENCHMARK(BM_KeyPoolDraw)->Arg(128)->Arg(1024)->Arg(16384);

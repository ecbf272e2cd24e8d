#include <benchmark/benchmark.h>

#include <crlcc/crlcc.hpp>

#include <random>

using namespace crlcc;

namespace {

void BM_Hash(benchmark::State& state) {
  const auto s = gen(128, 1);
  std::vector<std::uint8_t> data(static_cast<std::size_t>(state.range(0)), 0x5A);
  for (auto _ : state) benchmark::DoNotOptimize(hash(s, data, 128));
  state.SetBytesProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_Hash)->Arg(64)->Arg(1024)->Arg(16384);

void BM_EccEncode(benchmark::State& state) {
  const auto p = make_ecc_params(static_cast<std::size_t>(state.range(0)));
  std::mt19937_64 rng(1);
  const auto m = BitString::random(p.message_bits, rng);
  for (auto _ : state) benchmark::DoNotOptimize(ecc_encode(p, m));
}
BENCHMARK(BM_EccEncode)->Arg(128)->Arg(1024)->Arg(8192);

void BM_EccDecodeNoisy(benchmark::State& state) {
  const auto p = make_ecc_params(static_cast<std::size_t>(state.range(0)));
  std::mt19937_64 rng(2);
  BitString w = ecc_encode(p, BitString::random(p.message_bits, rng));
  for (std::size_t e = 0; e < p.radius_bits; ++e) w.flip(rng() % p.block_bits);
  for (auto _ : state) benchmark::DoNotOptimize(ecc_decode(p, w));
}
BENCHMARK(BM_EccDecodeNoisy)->Arg(128)->Arg(1024)->Arg(8192);

void BM_BuildGraph(benchmark::State& state) {
  for (auto _ : state)
    benchmark::DoNotOptimize(build_local_expander(static_cast<std::size_t>(state.range(0)), 0.01, 7));
}
BENCHMARK(BM_BuildGraph)->Arg(256)->Arg(1024)->Unit(benchmark::kMillisecond);

void BM_WeakEncode(benchmark::State& state) {
  const auto kp = static_cast<std::size_t>(state.range(0));
  const auto p = make_weak_params(kp * 128, 128, gen(128, 3), 3);
  std::mt19937_64 rng(3);
  const auto x = BitString::random(p.k, rng);
  for (auto _ : state) benchmark::DoNotOptimize(weak_encode(p, x));
}
BENCHMARK(BM_WeakEncode)->Arg(64)->Arg(256)->Unit(benchmark::kMillisecond);

// Cold decodes: every iteration starts from an empty block cache.
void BM_WeakDecodeCold(benchmark::State& state) {
  const auto kp = static_cast<std::size_t>(state.range(0));
  const auto p = make_weak_params(kp * 128, 128, gen(128, 4), 4);
  std::mt19937_64 rng(4);
  const auto c = weak_encode(p, BitString::random(p.k, rng));
  std::size_t queries = 0;
  for (auto _ : state) {
    ReceivedWord w(c, p.layout);
    const auto res = weak_decode(p, w, 1 + rng() % p.n, rng);
    queries += res.bit_queries;
  }
  state.counters["queries"] = benchmark::Counter(static_cast<double>(queries), benchmark::Counter::kAvgIterations);
}
BENCHMARK(BM_WeakDecodeCold)->Arg(64)->Arg(256)->Unit(benchmark::kMillisecond);

void BM_StrongDecodeWarm(benchmark::State& state) {
  const auto t = static_cast<std::size_t>(state.range(0));
  const StrongCode code(make_strong_params(t, 128, gen(128, 5), 5));
  std::mt19937_64 rng(5);
  ReceivedWord w(code.encode(BitString::random(code.k(), rng)), code.layout());
  code.warm(w);
  for (auto _ : state) benchmark::DoNotOptimize(code.decode(w, 1 + rng() % code.n(), rng));
}
BENCHMARK(BM_StrongDecodeWarm)->Arg(32)->Arg(128)->Unit(benchmark::kMicrosecond);

}  // namespace

BENCHMARK_MAIN();

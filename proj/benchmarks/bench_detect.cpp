#include <benchmark/benchmark.h>

#include "mimo/channel.hpp"
#include "mimo/detect.hpp"
#include "mimo/linalg.hpp"
#include "mimo/sphere.hpp"

namespace {

mimo::ComplexMatrix bench_gram(std::size_t n, std::size_t k) {
  mimo::Rng rng(1);
  return mimo::gram(mimo::sample_channel(rng, n, k).h);
}

void BM_ExactInverse(benchmark::State& state) {
  const auto k = static_cast<std::size_t>(state.range(0));
  const auto c = bench_gram(4 * k, k);
  for (auto _ : state) benchmark::DoNotOptimize(mimo::exact_inverse(c));
}
BENCHMARK(BM_ExactInverse)->Arg(8)->Arg(16)->Arg(32);

void BM_NewtonInverse(benchmark::State& state) {
  const auto k = static_cast<std::size_t>(state.range(0));
  const int iters = static_cast<int>(state.range(1));
  const auto c = bench_gram(4 * k, k);
  for (auto _ : state) benchmark::DoNotOptimize(mimo::approx_inverse(c, 2, iters));
}
BENCHMARK(BM_NewtonInverse)->Args({8, 3})->Args({8, 7})->Args({16, 7})->Args({32, 7});

void BM_HigherOrderInverse(benchmark::State& state) {
  const auto c = bench_gram(32, 8);
  const int order = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(mimo::approx_inverse(c, order, 3));
}
BENCHMARK(BM_HigherOrderInverse)->Arg(2)->Arg(3)->Arg(7);

void BM_LinearDetect(benchmark::State& state) {
  mimo::Rng rng(2);
  const auto c = mimo::Constellation::qam(16);
  const auto ch = mimo::sample_channel(rng, 128, 8);
  const auto x = mimo::random_symbols(rng, c, 8);
  const auto y = mimo::transmit(ch, x, mimo::snr_to_n0(0.0, 8, 1.0), rng).y;
  const auto inv = state.range(0) == 0 ? mimo::InverseProvider::exact() : mimo::InverseProvider::iterative(2, 7);
  for (auto _ : state) benchmark::DoNotOptimize(mimo::zf_detect(ch.h, y, c, inv));
  state.SetLabel(inv.to_string());
}
BENCHMARK(BM_LinearDetect)->Arg(0)->Arg(1);

void BM_SphereDecode(benchmark::State& state) {
  const auto scheme = static_cast<mimo::SdScheme>(state.range(0));
  const auto c = mimo::Constellation::qam(4);
  const auto cfg = mimo::SdConfig::for_scheme(scheme);
  std::vector<std::pair<mimo::ComplexMatrix, mimo::CVector>> draws;
  mimo::Rng rng(3);
  for (int i = 0; i < 64; ++i) {
    const auto ch = mimo::sample_channel(rng, 16, 16);
    const auto x = mimo::random_symbols(rng, c, 16);
    draws.emplace_back(ch.h, mimo::transmit(ch, x, mimo::snr_to_n0(28.0, 16, 1.0), rng).y);
  }
  std::size_t i = 0;
  std::uint64_t nodes = 0;
  for (auto _ : state) {
    const auto& [h, y] = draws[i++ % draws.size()];
    const auto d = mimo::sphere_decode(h, y, c, cfg);
    nodes += d.stats.nodes_visited;
  }
  state.counters["nodes"] = benchmark::Counter(static_cast<double>(nodes), benchmark::Counter::kAvgIterations);
  state.SetLabel(std::string(mimo::to_string(scheme)));
}
BENCHMARK(BM_SphereDecode)
    ->Arg(static_cast<int>(mimo::SdScheme::proposed))
    ->Arg(static_cast<int>(mimo::SdScheme::se_sd))
    ->Arg(static_cast<int>(mimo::SdScheme::fp_sd));

}  // namespace
BENCHMARK_MAIN();

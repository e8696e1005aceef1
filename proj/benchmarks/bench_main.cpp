#include <benchmark/benchmark.h>

#include <random>

#include "kqmc/adversary.hpp"
#include "kqmc/expsum.hpp"
#include "kqmc/integrator.hpp"
#include "kqmc/korobov.hpp"

namespace {

using namespace kqmc;

void BM_ExpsumSingle(benchmark::State& state) {
  const auto p = state.range(0);
  const KorobovSet set(SetKind::S, p, 4, Storage::materialized);
  const auto k = Frequency::from_dense({3, -1, 2, 5});
  for (auto _ : state) benchmark::DoNotOptimize(expsum_single(k, set));
  state.SetItemsProcessed(state.iterations() * set.size());
}
BENCHMARK(BM_ExpsumSingle)->Arg(31)->Arg(101)->Arg(307);

void BM_ExpsumUnionStreaming(benchmark::State& state) {
  const auto uset = union_set(SetKind::S, state.range(0), 4, Storage::streaming);
  const auto k = Frequency::from_dense({3, -1, 2, 5});
  for (auto _ : state) benchmark::DoNotOptimize(expsum_union(k, uset));
  state.SetItemsProcessed(state.iterations() * uset.size());
}
BENCHMARK(BM_ExpsumUnionStreaming)->Arg(50)->Arg(100)->Arg(200);

void BM_PointGeneration(benchmark::State& state) {
  const auto kind = state.range(1) == 0 ? SetKind::S : SetKind::T;
  for (auto _ : state) {
    const KorobovSet set(kind, state.range(0), 8, Storage::materialized);
    benchmark::DoNotOptimize(set.numerator(0, 0));
  }
}
BENCHMARK(BM_PointGeneration)->Args({101, 0})->Args({101, 1})->Args({307, 0});

void BM_QmcApplySpectral(benchmark::State& state) {
  const auto uset = union_set(SetKind::T, state.range(0), 3);
  const auto f = random_function(3, 3, 8, 40, WeightScheme::F2);
  for (auto _ : state) benchmark::DoNotOptimize(qmc_apply(f, uset));
}
BENCHMARK(BM_QmcApplySpectral)->Arg(20)->Arg(50);

void BM_FoolingCertificate(benchmark::State& state) {
  const int d = 2;
  const auto n = state.range(0);
  std::mt19937_64 rng(1);
  std::vector<RationalPoint> nodes;
  for (std::int64_t h = 0; h < n; ++h) {
    nodes.push_back(RationalPoint{{static_cast<std::int64_t>(rng() % 1009), static_cast<std::int64_t>(rng() % 1009)}, 1009});
  }
  const auto alg = LinearAlgorithm::qmc(nodes);
  for (auto _ : state) benchmark::DoNotOptimize(fooling_certificate(alg, d));
}
BENCHMARK(BM_FoolingCertificate)->Arg(8)->Arg(32)->Arg(64);

}  // namespace

BENCHMARK_MAIN();

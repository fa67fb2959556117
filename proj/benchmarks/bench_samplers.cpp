#include <benchmark/benchmark.h>

#include "condvol/estimators.hpp"
#include "condvol/rng.hpp"
#include "condvol/samplers.hpp"

using namespace condvol;

namespace {

void BM_PhiloxU64(benchmark::State& state) {
  RandomStream stream(1);
  for (auto _ : state) benchmark::DoNotOptimize(stream.next_u64());
}
BENCHMARK(BM_PhiloxU64);

void BM_Gaussian(benchmark::State& state) {
  RandomStream stream(1);
  for (auto _ : state) benchmark::DoNotOptimize(stream.gaussian());
}
BENCHMARK(BM_Gaussian);

// Cube-rejection throughput on the two-qubit conditioned slice; the criterion
// run is 1e8 of these.
void BM_CubeRejection2x2(benchmark::State& state) {
  const double r = static_cast<double>(state.range(0)) / 10.0;
  RandomStream stream(1);
  for (auto _ : state) {
    benchmark::DoNotOptimize(count_accepted_conditioned(r, 2, 4096, stream));
  }
  state.SetItemsProcessed(state.iterations() * 4096);
}
BENCHMARK(BM_CubeRejection2x2)->Arg(0)->Arg(5)->Arg(9);

void BM_XRejection(benchmark::State& state) {
  RandomStream stream(1);
  for (auto _ : state) {
    benchmark::DoNotOptimize(count_accepted_x(0.0, 4096, stream));
  }
  state.SetItemsProcessed(state.iterations() * 4096);
}
BENCHMARK(BM_XRejection);

void BM_SliceBatch(benchmark::State& state) {
  const double r = static_cast<double>(state.range(0)) / 10.0;
  RandomStream stream(1);
  for (auto _ : state) {
    benchmark::DoNotOptimize(sample_conditioned_slice_batch(r, 32, stream));
  }
  state.SetItemsProcessed(state.iterations() * 32);
}
BENCHMARK(BM_SliceBatch)->Arg(0)->Arg(5)->Arg(9);

void BM_FiberSampler(benchmark::State& state) {
  const int m = static_cast<int>(state.range(0));
  Eigen::Matrix2cd eta = Eigen::Matrix2cd::Zero();
  eta(0, 0) = 0.75;
  eta(1, 1) = 0.25;
  ConditionedSampler sampler(eta, m);
  RandomStream stream(1);
  for (auto _ : state) {
    sampler.sample(stream);
    benchmark::DoNotOptimize(sampler.current_is_ppt());
  }
  state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_FiberSampler)->Arg(2)->Arg(3)->Arg(4);

void BM_HaarUnitary4(benchmark::State& state) {
  RandomStream stream(1);
  for (auto _ : state) benchmark::DoNotOptimize(haar_unitary(4, stream));
}
BENCHMARK(BM_HaarUnitary4);

void BM_HsDensity(benchmark::State& state) {
  const int N = static_cast<int>(state.range(0));
  RandomStream stream(1);
  for (auto _ : state) benchmark::DoNotOptimize(sample_hs_density(N, stream));
}
BENCHMARK(BM_HsDensity)->Arg(4)->Arg(8);

}  // namespace

BENCHMARK_MAIN();

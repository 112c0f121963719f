#include <benchmark/benchmark.h>

#include <memory>
#include <vector>

#include "umedest/umedest.hpp"

namespace {

using namespace umedest;

const PoissonFamily kFamily;

void BM_PoissonTable(benchmark::State& state) {
  const double lambda = static_cast<double>(state.range(0));
  for (auto _ : state) {
    PoissonDistribution dist(lambda);
    benchmark::DoNotOptimize(dist.cdf(dist.upper_bound()));
  }
}
BENCHMARK(BM_PoissonTable)->Arg(5)->Arg(100)->Arg(1000);

void BM_UmedEmpirical(benchmark::State& state) {
  const auto sample =
      sample_poisson(5.0, static_cast<size_t>(state.range(0)), 42);
  for (auto _ : state) {
    const EmpiricalDistribution emp(sample);
    benchmark::DoNotOptimize(umed(emp).value);
  }
}
BENCHMARK(BM_UmedEmpirical)->Arg(50)->Arg(10000);

void BM_EstimateOptimal(benchmark::State& state) {
  const auto sample =
      sample_poisson(5.0, static_cast<size_t>(state.range(0)), 42);
  const EmpiricalDistribution emp(sample);
  for (auto _ : state) {
    benchmark::DoNotOptimize(estimate_optimal(emp, kFamily).theta_hat);
  }
}
BENCHMARK(BM_EstimateOptimal)->Arg(20)->Arg(50);

void BM_EstimateHampel(benchmark::State& state) {
  const auto sample = sample_poisson(5.0, 50, 42);
  const EmpiricalDistribution emp(sample);
  const double m = m0(kFamily, 5.0) / 2.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        estimate_hampel(emp, kFamily, {.m = m}).theta_hat);
  }
}
BENCHMARK(BM_EstimateHampel);

void BM_MaxBias(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(max_bias(kFamily, 5.0, 0.1).bias);
  }
}
BENCHMARK(BM_MaxBias);

void BM_RunCell(benchmark::State& state) {
  const auto spec = EstimatorSpec::parse("optimal");
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        run_cell(kFamily, 5.0, 20, 0.1, 10, spec, 100, 7).mse);
  }
}
BENCHMARK(BM_RunCell);

}  // namespace

BENCHMARK_MAIN();

#include <benchmark/benchmark.h>

#include <cmath>
#include <cstdint>

#include "diqkd/bias_envelope.hpp"
#include "diqkd/correlation.hpp"
#include "diqkd/keyrate.hpp"

using namespace diqkd;

static void BM_GQ(benchmark::State& state) {
  const NoiseParam q(0.2);
  double z = 0.3;
  for (auto _ : state) {
    benchmark::DoNotOptimize(g_q(q, z, 0.5));
    z = z < 0.8 ? z + 1e-9 : 0.3;
  }
}
BENCHMARK(BM_GQ);

static void BM_AnalyticTwoBasis(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(two_basis_bound_analytic(2.5));
}
BENCHMARK(BM_AnalyticTwoBasis);

static void BM_TwoBasisCurve(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(two_basis_curve(NoiseParam(0.1), 0.5, n));
}
BENCHMARK(BM_TwoBasisCurve)->Arg(500)->Arg(2000)->Arg(20000)->Unit(benchmark::kMillisecond);

static void BM_Envelope(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(conjectured_envelope_bias(NoiseParam(0.2), {2.2, 0.5}));
  }
}
BENCHMARK(BM_Envelope)->Unit(benchmark::kMicrosecond);

// Leaves per second of the certifier, at decreasing precision.
static void BM_Certify(benchmark::State& state) {
  const double eps = std::pow(10.0, -static_cast<double>(state.range(0)));
  AffineBound plane = conjectured_envelope_bias(NoiseParam(0.2), {2.2, 0.5}).tangent;
  plane.epsilon = eps;
  std::uint64_t leaves = 0;
  for (auto _ : state) {
    const AffineBound r = certify_bias_plane(NoiseParam(0.2), plane);
    leaves += r.covering_size;
    benchmark::DoNotOptimize(r.status);
  }
  state.counters["leaves"] = benchmark::Counter(static_cast<double>(leaves), benchmark::Counter::kAvgIterations);
  state.counters["leaf_rate"] = benchmark::Counter(static_cast<double>(leaves), benchmark::Counter::kIsRate);
}
BENCHMARK(BM_Certify)->DenseRange(2, 5)->Unit(benchmark::kMillisecond);

static void BM_OptimizeImplementation(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        optimize_implementation(0.85, 0.0, NoiseParam(0.0), RateMode::conjectured));
  }
}
BENCHMARK(BM_OptimizeImplementation)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();

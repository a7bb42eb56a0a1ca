#include <benchmark/benchmark.h>

#include "tmsbell/bell.hpp"
#include "tmsbell/fock_oracle.hpp"
#include "tmsbell/quadrature.hpp"
#include "tmsbell/verification.hpp"

namespace {

using namespace tmsbell;

void BM_MaxBell(benchmark::State& state) {
  const auto coeffs = evolve_coeffs({state.range(0) / 10.0, 0.0}, {0.5}, ChannelTime(0.3));
  OptimizerConfig cfg;
  cfg.oracle_grid_n = 0;
  for (auto _ : state) benchmark::DoNotOptimize(max_bell(coeffs, cfg));
}
BENCHMARK(BM_MaxBell)->Arg(3)->Arg(10)->Arg(50);

void BM_BellFunction(benchmark::State& state) {
  const auto coeffs = evolve_coeffs({1.0, 0.0}, {0.5}, ChannelTime(0.3));
  const PhasePoint a{0.3, 0.1}, b{-0.2, 0.4};
  for (auto _ : state) benchmark::DoNotOptimize(bell_function(coeffs, a, b));
}
BENCHMARK(BM_BellFunction);

void BM_JointParity(benchmark::State& state) {
  const auto amps = fock::tmss_amplitudes({1.0, 0.0}, static_cast<int>(state.range(0)));
  const PhasePoint a{0.3, 0.1}, b{-0.2, 0.4};
  for (auto _ : state) benchmark::DoNotOptimize(fock::joint_parity_expectation(amps, a, b));
}
BENCHMARK(BM_JointParity)->Arg(20)->Arg(60);

void BM_GaussHermiteRule(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(quad::GaussHermiteRule(static_cast<int>(state.range(0))));
}
BENCHMARK(BM_GaussHermiteRule)->Arg(16)->Arg(32)->Arg(64);

void BM_ConvolveNumeric(benchmark::State& state) {
  verify::QuadratureSpec q;
  q.nodes_per_axis = static_cast<int>(state.range(0));
  for (auto _ : state)
    benchmark::DoNotOptimize(
        verify::convolve_numeric({0.5, 0.0}, {0.5}, ChannelTime(0.5), {0.2, 0.1}, {0.1, -0.3}, q));
}
BENCHMARK(BM_ConvolveNumeric)->Arg(12)->Arg(24)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();

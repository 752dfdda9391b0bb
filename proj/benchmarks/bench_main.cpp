// Microbenchmarks for the hot paths: exponentials, the Iwasawa chart, phase
// evaluation, trajectory sampling, quantization, and the reference
// integrator they are all checked against.

#include <benchmark/benchmark.h>

#include <cmath>

#include "sl2mag/lie_core.hpp"
#include "sl2mag/periodicity.hpp"
#include "sl2mag/trajectories.hpp"

using namespace sl2mag;

namespace {

const AlgebraVec kGeneric{0.63, -0.41, 0.52};

void BM_ExpClosedForm(benchmark::State& state) {
  double t = 0.0;
  for (auto _ : state) {
    t += 1e-3;
    benchmark::DoNotOptimize(exp_algebra(kGeneric, t));
  }
}
BENCHMARK(BM_ExpClosedForm);

void BM_ExpSeriesOracle(benchmark::State& state) {
  double t = 0.0;
  for (auto _ : state) {
    t += 1e-3;
    benchmark::DoNotOptimize(exp_oracle(kGeneric, t));
  }
}
BENCHMARK(BM_ExpSeriesOracle);

void BM_IwasawaDecompose(benchmark::State& state) {
  const Mat2 p = exp_algebra(kGeneric, 1.2);
  for (auto _ : state) {
    benchmark::DoNotOptimize(iwasawa_decompose(p));
  }
}
BENCHMARK(BM_IwasawaDecompose);

void BM_PhaseRotational(benchmark::State& state) {
  const PhaseSolution U(3.1, 2.0, 0.0);
  double s = 0.0;
  for (auto _ : state) {
    s += 1e-2;
    benchmark::DoNotOptimize(U(s));
  }
}
BENCHMARK(BM_PhaseRotational);

void BM_PhaseDissipative(benchmark::State& state) {
  const PhaseSolution U(1.1, 2.0, 0.3);
  double s = 0.0;
  for (auto _ : state) {
    s += 1e-2;
    benchmark::DoNotOptimize(U(s));
  }
}
BENCHMARK(BM_PhaseDissipative);

void BM_TrajectorySample(benchmark::State& state) {
  const MagneticParams mp{3.2, M_PI_2};
  const ReconstructedTrajectory traj(mp, {1.0, 0.0, 0.0});
  double s = 0.0;
  for (auto _ : state) {
    s += 1e-2;
    benchmark::DoNotOptimize(traj.at(s));
  }
}
BENCHMARK(BM_TrajectorySample);

void BM_OracleIntegration(benchmark::State& state) {
  const MagneticParams mp{3.2, M_PI_2};
  const ReconstructedTrajectory traj(mp, {1.0, 0.0, 0.0});
  const TrajectoryState init = traj.at(0.0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(integrate_oracle(init, mp, 2.0, 1e-10, 21));
  }
}
BENCHMARK(BM_OracleIntegration);

void BM_QuantizedRoots(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(quantized_strength(3, 7, M_PI / 3.0));
  }
}
BENCHMARK(BM_QuantizedRoots);

void BM_CertifyRow(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(certify(3, 7, M_PI / 3.0));
  }
}
BENCHMARK(BM_CertifyRow);

}  // namespace

BENCHMARK_MAIN();

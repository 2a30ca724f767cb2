#include <benchmark/benchmark.h>

#include <cmath>

#include "shuttle/constants.hpp"
#include "shuttle/ensemble.hpp"
#include "shuttle/fits.hpp"
#include "shuttle/oscillator.hpp"
#include "shuttle/rng.hpp"
#include "shuttle/scaling.hpp"
#include "shuttle/spectrum.hpp"

using namespace shuttle;

namespace {

const double kOmega0 = phys::calibrate_omega(15e-6, 0.130);
const phys::TrapConfig kTrap(kOmega0, 1e-3, phys::kMassRb87);

void BM_SpectrumClosedForm(benchmark::State& state) {
  const auto plan = traj::make_plan(traj::smoothstep_profile(3), 5.6e-6,
                                    state.range(0) / kOmega0);
  for (auto _ : state)
    benchmark::DoNotOptimize(spectral::acceleration_spectrum(
        plan, kOmega0, spectral::SpectrumMethod::kClosedForm));
}
BENCHMARK(BM_SpectrumClosedForm)->Arg(5)->Arg(90)->Arg(5000);

void BM_SpectrumQuadrature(benchmark::State& state) {
  const auto plan = traj::make_plan(traj::smoothstep_profile(3), 5.6e-6,
                                    state.range(0) / kOmega0);
  for (auto _ : state)
    benchmark::DoNotOptimize(spectral::spectrum_quadrature(plan, kOmega0));
}
BENCHMARK(BM_SpectrumQuadrature)->Arg(90)->Arg(1000);

void BM_ScalingStudy(benchmark::State& state) {
  std::vector<double> times;
  for (int i = 0; i < 8; ++i)
    times.push_back(50.0 / kOmega0 * std::pow(100.0, i / 7.0));
  for (auto _ : state)
    benchmark::DoNotOptimize(spectral::scaling_study(traj::smoothstep_profile(3),
                                                     kTrap, 5.6e-6, times));
}
BENCHMARK(BM_ScalingStudy);

void BM_DrivenOscillator(benchmark::State& state) {
  const auto plan = traj::make_plan(traj::smoothstep_profile(3), 5.6e-6,
                                    2 * M_PI * 14 / kOmega0);
  for (auto _ : state)
    benchmark::DoNotOptimize(oracle::simulate_driven(plan, kTrap, {0.0, 0.0}));
}
BENCHMARK(BM_DrivenOscillator);

void BM_MonteCarloSurvival(benchmark::State& state) {
  for (auto _ : state)
    benchmark::DoNotOptimize(oracle::monte_carlo_survival(
        0.165e-6, kTrap, 15e-6, 0.98, state.range(0), 10000, 1));
}
BENCHMARK(BM_MonteCarloSurvival)->Arg(100)->Arg(1000)->Unit(benchmark::kMillisecond);

void BM_PhiloxStream(benchmark::State& state) {
  rng::RandomStream rs(1, 0);
  for (auto _ : state) benchmark::DoNotOptimize(rs.erlang3());
}
BENCHMARK(BM_PhiloxStream);

void BM_Gaussian2dFit(benchmark::State& state) {
  infer::CalibrationScan base;
  for (int ix = -4; ix <= 4; ++ix)
    for (int iy = -4; iy <= 4; ++iy) {
      const double fx = 88.90 + 0.01 * ix, fy = 93.12 + 0.01 * iy;
      const double ux = (fx - 88.8984) / 0.020, uy = (fy - 93.1187) / 0.024;
      base.grid.push_back(
          {fx, fy, 0.45 + 0.5 * std::exp(-0.5 * (ux * ux + uy * uy)), 100});
    }
  for (auto _ : state) {
    infer::CalibrationScan scan = base;
    benchmark::DoNotOptimize(infer::fit_gaussian2d(scan));
  }
}
BENCHMARK(BM_Gaussian2dFit)->Unit(benchmark::kMicrosecond);

}  // namespace

BENCHMARK_MAIN();

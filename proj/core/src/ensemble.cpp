#include "shuttle/ensemble.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "shuttle/constants.hpp"
#include "shuttle/parallel.hpp"
#include "shuttle/rng.hpp"
#include "shuttle/spectrum.hpp"

namespace shuttle::oracle {

namespace {
constexpr long kChunk = 1024;
}

EnsembleResult thermal_ensemble_heating(const traj::MotionPlan& plan,
                                        const phys::TrapConfig& trap,
                                        double temperature, long samples,
                                        std::uint64_t seed) {
  if (samples < 100)
    throw std::invalid_argument("thermal_ensemble_heating: samples >= 100");
  if (temperature < 0.0)
    throw std::domain_error("thermal_ensemble_heating: temperature >= 0");

  const double sigma_v =
      std::sqrt(phys::kBoltzmann * temperature / trap.mass());
  const double sigma_x = sigma_v / trap.omega0();
  const double x_start = plan.position(0.0);
  const double x_end = plan.position(plan.duration);

  const long n_chunks = (samples + kChunk - 1) / kChunk;
  std::vector<long double> sums(static_cast<std::size_t>(n_chunks), 0.0L);
  std::vector<long double> sq_sums(static_cast<std::size_t>(n_chunks), 0.0L);

  par::parallel_chunks(samples, kChunk, [&](long chunk, long begin, long end) {
    long double acc = 0.0L, acc_sq = 0.0L;
    for (long i = begin; i < end; ++i) {
      rng::RandomStream stream(seed, static_cast<std::uint64_t>(i));
      SimState s0;
      s0.position = x_start + sigma_x * stream.normal();
      s0.velocity = sigma_v * stream.normal();
      const double e0 = state_energy(s0, trap, x_start);
      const SimState s1 = simulate_driven(plan, trap, s0);
      const double gain = state_energy(s1, trap, x_end) - e0;
      acc += gain;
      acc_sq += static_cast<long double>(gain) * gain;
    }
    sums[static_cast<std::size_t>(chunk)] = acc;
    sq_sums[static_cast<std::size_t>(chunk)] = acc_sq;
  });

  long double total = 0.0L, total_sq = 0.0L;
  for (long c = 0; c < n_chunks; ++c) {
    total += sums[static_cast<std::size_t>(c)];
    total_sq += sq_sums[static_cast<std::size_t>(c)];
  }
  const long double n = static_cast<long double>(samples);
  const long double mean = total / n;
  const long double var = std::max(0.0L, (total_sq / n - mean * mean));

  EnsembleResult out;
  out.mean_energy_gain = static_cast<double>(mean);
  out.std_error =
      static_cast<double>(std::sqrt(var / std::max(1.0L, n - 1.0L)));
  out.samples = samples;
  out.seed = seed;
  return out;
}

std::vector<SurvivalCurvePoint> monte_carlo_survival(
    double delta_t_per_cycle, const phys::TrapConfig& trap, double t0,
    double p0, long cycles, long samples, std::uint64_t seed) {
  if (samples < 1000)
    throw std::invalid_argument("monte_carlo_survival: samples >= 1000");
  if (cycles < 0)
    throw std::invalid_argument("monte_carlo_survival: cycles >= 0");
  if (!(t0 >= 0.0) || !(delta_t_per_cycle >= 0.0))
    throw std::domain_error("monte_carlo_survival: temperatures >= 0");
  if (!(p0 >= 0.0 && p0 <= 1.0))
    throw std::domain_error("monte_carlo_survival: p0 in [0,1]");

  const double u0 = trap.depth_u0();
  const std::size_t n_points = static_cast<std::size_t>(cycles) + 1;
  const long n_chunks = (samples + kChunk - 1) / kChunk;
  std::vector<std::vector<long>> lost(static_cast<std::size_t>(n_chunks));

  par::parallel_chunks(samples, kChunk, [&](long chunk, long begin, long end) {
    std::vector<long>& local = lost[static_cast<std::size_t>(chunk)];
    local.assign(n_points, 0);
    for (long i = begin; i < end; ++i) {
      rng::RandomStream stream(seed, static_cast<std::uint64_t>(i));
      for (long n = 0; n <= cycles; ++n) {
        // E / kB T_n is Erlang-3; truncation at the depth loses the atom.
        const double t_n = t0 + delta_t_per_cycle * static_cast<double>(n);
        const double energy_over_kb = t_n * stream.erlang3();
        if (energy_over_kb > u0) ++local[static_cast<std::size_t>(n)];
      }
    }
  });

  std::vector<long> lost_total(n_points, 0);
  for (const auto& local : lost)
    for (std::size_t n = 0; n < n_points; ++n) lost_total[n] += local[n];

  std::vector<SurvivalCurvePoint> curve(n_points);
  const double inv_n = 1.0 / static_cast<double>(samples);
  for (std::size_t n = 0; n < n_points; ++n) {
    const double frac = static_cast<double>(lost_total[n]) * inv_n;
    curve[n].cycle = static_cast<long>(n);
    curve[n].survival = p0 - frac;
    curve[n].std_error = std::sqrt(frac * (1.0 - frac) * inv_n);
  }
  return curve;
}

std::vector<SurvivalCurvePoint> monte_carlo_survival(
    const traj::MotionPlan& plan, const phys::TrapConfig& trap, double t0,
    double p0, long cycles, long samples, std::uint64_t seed) {
  const double delta_t = spectral::delta_n(plan, trap).delta_t;
  return monte_carlo_survival(delta_t, trap, t0, p0, cycles, samples, seed);
}

}  // namespace shuttle::oracle

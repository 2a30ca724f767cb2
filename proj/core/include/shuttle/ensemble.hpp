#ifndef SHUTTLE_ENSEMBLE_HPP
#define SHUTTLE_ENSEMBLE_HPP

#include <cstdint>
#include <vector>

#include "shuttle/oscillator.hpp"
#include "shuttle/profile.hpp"
#include "shuttle/trap.hpp"

namespace shuttle::oracle {

struct EnsembleResult {
  double mean_energy_gain = 0.0;  // J
  double std_error = 0.0;         // J
  long samples = 0;
  std::uint64_t seed = 0;
};

/// Phase-averaged heating oracle: initial (x, v) drawn from the classical
/// thermal distribution of the static trap, each sample integrated through
/// the plan. Reproducible and order-independent for a given seed.
EnsembleResult thermal_ensemble_heating(const traj::MotionPlan& plan,
                                        const phys::TrapConfig& trap,
                                        double temperature, long samples,
                                        std::uint64_t seed);

struct SurvivalCurvePoint {
  long cycle = 0;
  double survival = 0.0;
  double std_error = 0.0;
};

/// Truncated-Boltzmann survival after repeated transfers. Each cycle n has
/// scalar temperature t0 + delta_t_per_cycle * n; a sample's total energy is
/// drawn from the density p(E) ~ E^2 exp(-E / kB T_n) and the atom counts as
/// lost when E exceeds the trap depth. The curve starts at cycle 0.
std::vector<SurvivalCurvePoint> monte_carlo_survival(
    double delta_t_per_cycle, const phys::TrapConfig& trap, double t0,
    double p0, long cycles, long samples, std::uint64_t seed);

/// Same with the per-cycle heating computed from the plan via delta_n.
std::vector<SurvivalCurvePoint> monte_carlo_survival(
    const traj::MotionPlan& plan, const phys::TrapConfig& trap, double t0,
    double p0, long cycles, long samples, std::uint64_t seed);

}  // namespace shuttle::oracle

#endif

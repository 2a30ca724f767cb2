#ifndef SHUTTLE_OSCILLATOR_HPP
#define SHUTTLE_OSCILLATOR_HPP

#include <functional>

#include "shuttle/profile.hpp"
#include "shuttle/trap.hpp"

namespace shuttle::oracle {

struct SimState {
  double position = 0.0;  // m
  double velocity = 0.0;  // m/s
};

/// 0.5 m v^2 + 0.5 m omega0^2 (x - trap_center)^2, Joules.
double state_energy(const SimState& state, const phys::TrapConfig& trap,
                    double trap_center);

struct IntegratorOptions {
  // RK4 step is period/steps_per_period (or finer when the drive is short);
  // the default holds the halving-convergence check below 1e-9 relative.
  int steps_per_period = 960;
};

/// Integrates x'' = -omega0^2 (x - xc(t)) over [0, duration].
SimState integrate_driven(const std::function<double(double)>& trap_center,
                          double duration, const phys::TrapConfig& trap,
                          const SimState& initial,
                          const IntegratorOptions& opts = {});

/// Same with the drive taken from a transport/exchange plan.
SimState simulate_driven(const traj::MotionPlan& plan,
                         const phys::TrapConfig& trap, const SimState& initial,
                         const IntegratorOptions& opts = {});

}  // namespace shuttle::oracle

#endif

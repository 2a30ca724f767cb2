#include "shuttle/oscillator.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace shuttle::oracle {

double state_energy(const SimState& state, const phys::TrapConfig& trap,
                    double trap_center) {
  const double dx = state.position - trap_center;
  const double w = trap.omega0();
  return 0.5 * trap.mass() *
         (state.velocity * state.velocity + w * w * dx * dx);
}

SimState integrate_driven(const std::function<double(double)>& trap_center,
                          double duration, const phys::TrapConfig& trap,
                          const SimState& initial,
                          const IntegratorOptions& opts) {
  if (!(duration > 0.0))
    throw std::domain_error("integrate_driven: duration must be > 0");
  if (opts.steps_per_period < 8)
    throw std::invalid_argument("integrate_driven: steps_per_period too small");

  const double w2 = trap.omega0() * trap.omega0();
  const double period = 2.0 * std::numbers::pi / trap.omega0();
  const double h_max = std::min(period, duration) / opts.steps_per_period;
  const double steps_needed = std::ceil(duration / h_max);
  if (steps_needed > 2e9)
    throw std::runtime_error(
        "integrate_driven: step size underflow (duration spans too many "
        "trap periods for a fixed-step integration)");
  const long n = static_cast<long>(steps_needed);
  const double h = duration / static_cast<double>(n);

  auto accel = [&](double t, double x) { return -w2 * (x - trap_center(t)); };

  double x = initial.position;
  double v = initial.velocity;
  for (long i = 0; i < n; ++i) {
    const double t = static_cast<double>(i) * h;
    const double k1x = v;
    const double k1v = accel(t, x);
    const double k2x = v + 0.5 * h * k1v;
    const double k2v = accel(t + 0.5 * h, x + 0.5 * h * k1x);
    const double k3x = v + 0.5 * h * k2v;
    const double k3v = accel(t + 0.5 * h, x + 0.5 * h * k2x);
    const double k4x = v + h * k3v;
    const double k4v = accel(t + h, x + h * k3x);
    x += h / 6.0 * (k1x + 2.0 * k2x + 2.0 * k3x + k4x);
    v += h / 6.0 * (k1v + 2.0 * k2v + 2.0 * k3v + k4v);
  }
  return SimState{x, v};
}

SimState simulate_driven(const traj::MotionPlan& plan,
                         const phys::TrapConfig& trap, const SimState& initial,
                         const IntegratorOptions& opts) {
  // Stage times can overshoot the final step by one rounding ulp.
  auto drive = [&](double t) {
    return plan.position(std::clamp(t, 0.0, plan.duration));
  };
  return integrate_driven(drive, plan.duration, trap, initial, opts);
}

}  // namespace shuttle::oracle

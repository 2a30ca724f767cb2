#include "shuttle/budget.hpp"

#include <cmath>
#include <stdexcept>

#include "shuttle/constants.hpp"

namespace shuttle::spectral {

TransportScaling TransportScaling::smoothstep(int order) {
  if (order < 0)
    throw std::invalid_argument("TransportScaling: order must be >= 0");
  return TransportScaling(2.0 * order + 2.0);
}

TransportScaling TransportScaling::sinusoidal() { return TransportScaling(6.0); }

HeatingBudget heating_budget(const phys::TrapConfig& trap, double basic_total,
                             double alpha, double dx_start, double dx_target,
                             const TransportReference& ref, double distance,
                             double duration, const TransportScaling& scaling) {
  if (!(ref.distance > 0.0) || !(ref.duration > 0.0))
    throw std::invalid_argument(
        "heating_budget: reference distance and duration must be > 0");
  if (!(ref.delta_t >= 0.0) || !(basic_total >= 0.0) || !(alpha >= 0.0))
    throw std::invalid_argument("heating_budget: heating terms must be >= 0");
  if (!(duration > 0.0) || !(distance >= 0.0))
    throw std::invalid_argument("heating_budget: invalid transport leg");

  const double mis_coeff = 0.5 * alpha * trap.mass() * trap.omega0() *
                           trap.omega0() / phys::kBoltzmann;
  HeatingBudget b;
  b.alpha = alpha;
  b.basic_1 = 0.5 * basic_total;
  b.basic_2 = 0.5 * basic_total;
  b.mis_1 = mis_coeff * dx_start * dx_start;
  b.mis_2 = mis_coeff * dx_target * dx_target;
  const double dist_ratio = distance / ref.distance;
  b.transport = ref.delta_t * dist_ratio * dist_ratio *
                std::pow(ref.duration / duration, scaling.time_exponent());
  b.total = b.basic_1 + b.mis_1 + b.transport + b.basic_2 + b.mis_2;
  return b;
}

}  // namespace shuttle::spectral

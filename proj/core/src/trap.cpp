#include "shuttle/trap.hpp"

#include <cmath>
#include <stdexcept>

#include "shuttle/constants.hpp"

namespace shuttle::phys {

TrapConfig::TrapConfig(double omega0, double depth_u0, double mass)
    : omega0_(omega0), depth_u0_(depth_u0), mass_(mass) {
  if (!(omega0 > 0.0) || !std::isfinite(omega0))
    throw std::invalid_argument("TrapConfig: omega0 must be positive");
  if (!(depth_u0 > 0.0) || !std::isfinite(depth_u0))
    throw std::invalid_argument("TrapConfig: depth_u0 must be positive");
  if (!(mass > 0.0) || !std::isfinite(mass))
    throw std::invalid_argument("TrapConfig: mass must be positive");
}

double zero_point_length(const TrapConfig& trap) {
  return std::sqrt(kHbar / (2.0 * trap.mass() * trap.omega0()));
}

double gs_fraction_2d(const ThermalState& state, const TrapConfig& trap) {
  if (state.temperature < 0.0)
    throw std::domain_error("gs_fraction_2d: temperature must be >= 0");
  if (state.temperature == 0.0) return 1.0;
  const double eta = kHbar * trap.omega0() / (kBoltzmann * state.temperature);
  const double p = -std::expm1(-eta);  // 1 - exp(-eta), accurate for small eta
  return p * p;
}

double calibrate_omega(double temperature, double target_fraction) {
  if (!(temperature > 0.0))
    throw std::domain_error("calibrate_omega: temperature must be > 0");
  if (!(target_fraction > 0.0 && target_fraction < 1.0))
    throw std::domain_error("calibrate_omega: fraction must be in (0,1)");
  // fraction = (1 - e^-eta)^2 with eta = hbar*omega0/(kB*T) inverts exactly.
  const double eta = -std::log1p(-std::sqrt(target_fraction));
  return eta * kBoltzmann * temperature / kHbar;
}

}  // namespace shuttle::phys

#ifndef SHUTTLE_TRAP_HPP
#define SHUTTLE_TRAP_HPP

namespace shuttle::phys {

/// Harmonic trap parameters. Depth is stored as an equivalent temperature
/// (energy divided by the Boltzmann constant), so `depth_u0` is in Kelvin.
class TrapConfig {
 public:
  TrapConfig(double omega0, double depth_u0, double mass);

  double omega0() const { return omega0_; }      // rad/s
  double depth_u0() const { return depth_u0_; }  // K
  double mass() const { return mass_; }          // kg

 private:
  double omega0_;
  double depth_u0_;
  double mass_;
};

struct ThermalState {
  double temperature;  // K, >= 0
};

/// sqrt(hbar / (2 m omega0)), meters.
double zero_point_length(const TrapConfig& trap);

/// Thermal occupation of the radial two-dimensional motional ground state,
/// (1 - exp(-hbar*omega0/(kB*T)))^2. T = 0 returns exactly 1.
double gs_fraction_2d(const ThermalState& state, const TrapConfig& trap);

/// Inverts gs_fraction_2d: the unique omega0 > 0 with
/// gs_fraction_2d(T, omega0) == target_fraction.
double calibrate_omega(double temperature, double target_fraction);

}  // namespace shuttle::phys

#endif

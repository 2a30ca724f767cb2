#ifndef SHUTTLE_BUDGET_HPP
#define SHUTTLE_BUDGET_HPP

#include "shuttle/trap.hpp"

namespace shuttle::spectral {

/// Time-scaling law for transport heating, delta_t ~ D^2 / t^exponent.
/// Smoothstep order k gives exponent 2k+2; the sinusoidal profile gives 6.
class TransportScaling {
 public:
  static TransportScaling smoothstep(int order);
  static TransportScaling sinusoidal();
  double time_exponent() const { return exponent_; }

 private:
  explicit TransportScaling(double e) : exponent_(e) {}
  double exponent_;
};

/// Reference transport heating measurement used to anchor the scaling law.
struct TransportReference {
  double delta_t = 0.0;   // K
  double distance = 0.0;  // m
  double duration = 0.0;  // s
};

/// Per-inter-site-transfer heating decomposition, all terms in Kelvin.
struct HeatingBudget {
  double basic_1 = 0.0;
  double mis_1 = 0.0;
  double transport = 0.0;
  double basic_2 = 0.0;
  double mis_2 = 0.0;
  double total = 0.0;
  double alpha = 0.0;  // non-adiabaticity parameter of the exchange
};

/// Inter-site transfer budget: two in situ exchanges (each contributing
/// half of `basic_total` plus a misalignment term alpha*m*omega0^2*dx^2/2kB)
/// around one transport leg scaled from the reference measurement.
HeatingBudget heating_budget(const phys::TrapConfig& trap, double basic_total,
                             double alpha, double dx_start, double dx_target,
                             const TransportReference& ref, double distance,
                             double duration, const TransportScaling& scaling);

}  // namespace shuttle::spectral

#endif

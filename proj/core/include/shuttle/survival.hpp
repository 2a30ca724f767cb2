#ifndef SHUTTLE_SURVIVAL_HPP
#define SHUTTLE_SURVIVAL_HPP

namespace shuttle::infer {

/// Truncated-Boltzmann survival law. With the normalized temperature
/// zeta = (t0 + delta_t * n) / u0, the survival after n transfer cycles is
/// p0 - (1 + 1/zeta + 1/(2 zeta^2)) exp(-1/zeta).
struct SurvivalModel {
  double p0 = 1.0;               // initial survival probability
  double t0 = 0.0;               // K
  double delta_t_per_cycle = 0;  // K
  double u0 = 0.0;               // K (trap depth / kB)
};

void validate(const SurvivalModel& model);

/// Fraction of a thermal E^2 exp(-E/kBT) energy distribution above the
/// trap depth; zeta <= 0 returns the zero-temperature limit 0.
double truncation_tail(double zeta);

struct SurvivalEval {
  double value = 0.0;
  double zeta = 0.0;
  double tail = 0.0;
  bool clamped = false;
};

SurvivalEval survival_prob_detail(const SurvivalModel& model, double n);

/// Survival probability after n cycles, clamped to [0,1].
double survival_prob(const SurvivalModel& model, double n);

}  // namespace shuttle::infer

#endif

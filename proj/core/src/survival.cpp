#include "shuttle/survival.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace shuttle::infer {

void validate(const SurvivalModel& model) {
  if (!(model.p0 >= 0.0 && model.p0 <= 1.0))
    throw std::domain_error("SurvivalModel: p0 must be in [0,1]");
  if (!(model.t0 >= 0.0))
    throw std::domain_error("SurvivalModel: t0 must be >= 0");
  if (!(model.u0 > 0.0))
    throw std::domain_error("SurvivalModel: u0 must be > 0");
  if (!(model.delta_t_per_cycle >= 0.0))
    throw std::domain_error("SurvivalModel: delta_t_per_cycle must be >= 0");
}

double truncation_tail(double zeta) {
  if (zeta <= 0.0) return 0.0;
  const double x = 1.0 / zeta;
  return (1.0 + x + 0.5 * x * x) * std::exp(-x);
}

SurvivalEval survival_prob_detail(const SurvivalModel& model, double n) {
  if (!(n >= 0.0)) throw std::domain_error("survival_prob: n must be >= 0");
  SurvivalEval out;
  out.zeta = (model.t0 + model.delta_t_per_cycle * n) / model.u0;
  out.tail = truncation_tail(out.zeta);
  const double raw = model.p0 - out.tail;
  out.value = std::clamp(raw, 0.0, 1.0);
  out.clamped = out.value != raw;
  return out;
}

double survival_prob(const SurvivalModel& model, double n) {
  return survival_prob_detail(model, n).value;
}

}  // namespace shuttle::infer

#ifndef SHUTTLE_SCALING_HPP
#define SHUTTLE_SCALING_HPP

#include <vector>

#include "shuttle/profile.hpp"
#include "shuttle/trap.hpp"

namespace shuttle::spectral {

struct ScalingSample {
  double duration = 0.0;  // s
  double delta_n = 0.0;
};

struct ScalingStudy {
  double exponent = 0.0;  // p in envelope(delta_n) ~ t^-p
  double exponent_stderr = 0.0;
  std::vector<ScalingSample> samples;   // delta_n at the requested times
  std::vector<ScalingSample> envelope;  // local maxima the fit ran on
};

/// Fits the upper envelope of delta_n against duration on a dense
/// log-spaced grid spanning the requested times and returns the power-law
/// exponent. Requires at least 6 times spanning a decade, all with
/// omega0 * t >= 20.
ScalingStudy scaling_study(const traj::MotionProfile& profile,
                           const phys::TrapConfig& trap, double distance,
                           const std::vector<double>& times);

}  // namespace shuttle::spectral

#endif

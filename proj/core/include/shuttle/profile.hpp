#ifndef SHUTTLE_PROFILE_HPP
#define SHUTTLE_PROFILE_HPP

#include <string>
#include <vector>

namespace shuttle::traj {

enum class ProfileKind { kSmoothstep, kSinusoidal };

/// Dimensionless 0 -> 1 motion profile on [0,1] with analytic derivatives.
///
/// Smoothstep of order k is the unique degree-(2k+1) polynomial with k
/// vanishing derivatives at both endpoints; k = 1 is the constant-jerk ramp
/// 3s^2 - 2s^3 and k = 3 is 35s^4 - 84s^5 + 70s^6 - 20s^7. The sinusoidal
/// profile is (1/2)[(1/pi) sin(pi tau) + tau + 1] with tau = 2s - 1.
class MotionProfile {
 public:
  static MotionProfile smoothstep(int order);
  static MotionProfile sinusoidal();

  ProfileKind kind() const { return kind_; }
  /// Smoothstep order; -1 for the sinusoidal profile.
  int order() const { return order_; }
  /// Monomial coefficients c[j] of s^j (smoothstep only, empty otherwise).
  const std::vector<double>& coefficients() const { return coeffs_; }

  /// Value of the deriv_order-th derivative at s in [0,1].
  double eval(double s, int deriv_order = 0) const;

  /// "smoothstep:k" or "sinusoidal".
  std::string name() const;
  static MotionProfile parse(const std::string& name);

 private:
  MotionProfile() = default;
  ProfileKind kind_ = ProfileKind::kSmoothstep;
  int order_ = 0;
  std::vector<double> coeffs_;
};

MotionProfile smoothstep_profile(int order);
MotionProfile sinusoidal_profile();
double eval_profile(const MotionProfile& profile, double s, int deriv_order);

enum class PlanPurpose { kTransport, kAmplitudeExchange };

/// A profile scaled to physical distance and duration:
/// x(t) = distance * profile(t / duration).
struct MotionPlan {
  MotionProfile profile;
  double distance = 0.0;  // m
  double duration = 0.0;  // s
  PlanPurpose purpose = PlanPurpose::kTransport;

  double position(double t) const;      // m
  double velocity(double t) const;      // m/s
  double acceleration(double t) const;  // m/s^2
};

MotionPlan make_plan(const MotionProfile& profile, double distance,
                     double duration,
                     PlanPurpose purpose = PlanPurpose::kTransport);

}  // namespace shuttle::traj

#endif

#include "shuttle/profile.hpp"

#include <cmath>
#include <cstdint>
#include <numbers>
#include <stdexcept>

namespace shuttle::traj {

namespace {

// Orders above this would need coefficient products beyond 2^53 and stop
// being exactly representable.
constexpr int kMaxSmoothstepOrder = 16;

std::uint64_t binomial(int n, int r) {
  if (r < 0 || r > n) return 0;
  r = std::min(r, n - r);
  std::uint64_t result = 1;
  for (int i = 1; i <= r; ++i) {
    result = result * static_cast<std::uint64_t>(n - r + i) /
             static_cast<std::uint64_t>(i);
  }
  return result;
}

// Polynomial derivative evaluated by Horner on the shifted coefficients.
double eval_poly_deriv(const std::vector<double>& c, double s, int d) {
  const int deg = static_cast<int>(c.size()) - 1;
  if (d > deg) return 0.0;
  double acc = 0.0;
  for (int j = deg; j >= d; --j) {
    double fall = 1.0;
    for (int q = 0; q < d; ++q) fall *= static_cast<double>(j - q);
    acc = acc * s + c[static_cast<std::size_t>(j)] * fall;
  }
  return acc;
}

}  // namespace

MotionProfile MotionProfile::smoothstep(int order) {
  if (order < 0)
    throw std::invalid_argument("smoothstep: order must be >= 0");
  if (order > kMaxSmoothstepOrder)
    throw std::invalid_argument("smoothstep: orders above 16 not supported");
  MotionProfile p;
  p.kind_ = ProfileKind::kSmoothstep;
  p.order_ = order;
  p.coeffs_.assign(static_cast<std::size_t>(2 * order + 2), 0.0);
  // S_k(s) = s^(k+1) * sum_i C(k+i,i) C(2k+1,k-i) (-s)^i
  for (int i = 0; i <= order; ++i) {
    const double mag = static_cast<double>(binomial(order + i, i)) *
                       static_cast<double>(binomial(2 * order + 1, order - i));
    p.coeffs_[static_cast<std::size_t>(order + 1 + i)] =
        (i % 2 == 0) ? mag : -mag;
  }
  return p;
}

MotionProfile MotionProfile::sinusoidal() {
  MotionProfile p;
  p.kind_ = ProfileKind::kSinusoidal;
  p.order_ = -1;
  return p;
}

double MotionProfile::eval(double s, int deriv_order) const {
  if (!(s >= 0.0 && s <= 1.0))
    throw std::domain_error("MotionProfile::eval: s must be in [0,1]");
  if (deriv_order < 0)
    throw std::domain_error("MotionProfile::eval: deriv_order must be >= 0");

  if (kind_ == ProfileKind::kSmoothstep)
    return eval_poly_deriv(coeffs_, s, deriv_order);

  constexpr double pi = std::numbers::pi;
  const double tau = 2.0 * s - 1.0;
  if (deriv_order == 0)
    return 0.5 * (std::sin(pi * tau) / pi + tau + 1.0);
  // d^n/ds^n of cos carries a phase shift of (n-1) * pi/2 per order.
  const double amp = std::pow(2.0 * pi, static_cast<double>(deriv_order - 1));
  double v = amp * std::cos(pi * tau + (deriv_order - 1) * (pi / 2.0));
  if (deriv_order == 1) v += 1.0;
  return v;
}

std::string MotionProfile::name() const {
  if (kind_ == ProfileKind::kSinusoidal) return "sinusoidal";
  return "smoothstep:" + std::to_string(order_);
}

MotionProfile MotionProfile::parse(const std::string& name) {
  if (name == "sinusoidal") return sinusoidal();
  const std::string prefix = "smoothstep:";
  if (name.rfind(prefix, 0) == 0) {
    const std::string arg = name.substr(prefix.size());
    std::size_t pos = 0;
    int k = -1;
    try {
      k = std::stoi(arg, &pos);
    } catch (const std::exception&) {
      throw std::invalid_argument("unknown profile: " + name);
    }
    if (pos != arg.size())
      throw std::invalid_argument("unknown profile: " + name);
    return smoothstep(k);
  }
  throw std::invalid_argument("unknown profile: " + name);
}

MotionProfile smoothstep_profile(int order) {
  return MotionProfile::smoothstep(order);
}

MotionProfile sinusoidal_profile() { return MotionProfile::sinusoidal(); }

double eval_profile(const MotionProfile& profile, double s, int deriv_order) {
  return profile.eval(s, deriv_order);
}

double MotionPlan::position(double t) const {
  return distance * profile.eval(t / duration, 0);
}

double MotionPlan::velocity(double t) const {
  return distance / duration * profile.eval(t / duration, 1);
}

double MotionPlan::acceleration(double t) const {
  return distance / (duration * duration) * profile.eval(t / duration, 2);
}

MotionPlan make_plan(const MotionProfile& profile, double distance,
                     double duration, PlanPurpose purpose) {
  if (!(duration > 0.0))
    throw std::domain_error("make_plan: duration must be > 0");
  if (!(distance >= 0.0))
    throw std::domain_error("make_plan: distance must be >= 0");
  return MotionPlan{profile, distance, duration, purpose};
}

}  // namespace shuttle::traj

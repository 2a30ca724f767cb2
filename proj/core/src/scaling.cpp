#include "shuttle/scaling.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "shuttle/spectrum.hpp"

namespace shuttle::spectral {

namespace {

// |a~|^2 oscillates in omega0*t; the grid must resolve those fringes so
// local maxima trace the envelope. Floor of 200 points per decade, denser
// when omega0*t_max demands it.
int grid_size(double t_min, double t_max, double omega0) {
  const double span = std::log(t_max / t_min);
  const double per_log_floor = 200.0 / std::log(10.0);
  const double per_log_osc = 12.0 * omega0 * t_max / (2.0 * std::numbers::pi);
  const double n = span * std::max(per_log_floor, per_log_osc);
  if (n > 4e6)
    throw std::invalid_argument(
        "scaling_study: omega0 * t_max too large to resolve the envelope");
  return std::max(512, static_cast<int>(std::ceil(n)));
}

}  // namespace

ScalingStudy scaling_study(const traj::MotionProfile& profile,
                           const phys::TrapConfig& trap, double distance,
                           const std::vector<double>& times) {
  if (times.size() < 6)
    throw std::invalid_argument("scaling_study: need at least 6 times");
  const auto [min_it, max_it] = std::minmax_element(times.begin(), times.end());
  const double t_min = *min_it, t_max = *max_it;
  if (!(t_max / t_min >= 10.0))
    throw std::invalid_argument(
        "scaling_study: times must span at least one decade");
  for (double t : times)
    if (trap.omega0() * t < 20.0)
      throw std::invalid_argument("scaling_study: require omega0 * t >= 20");
  if (!(distance > 0.0))
    throw std::invalid_argument("scaling_study: distance must be > 0");

  auto delta_n_at = [&](double t) {
    return delta_n(traj::make_plan(profile, distance, t), trap).delta_n;
  };

  const int n = grid_size(t_min, t_max, trap.omega0());
  std::vector<double> grid_t(static_cast<std::size_t>(n)),
      grid_dn(static_cast<std::size_t>(n));
  const double log_min = std::log(t_min), log_max = std::log(t_max);
  for (int i = 0; i < n; ++i) {
    grid_t[static_cast<std::size_t>(i)] =
        std::exp(log_min + (log_max - log_min) * i / (n - 1));
    grid_dn[static_cast<std::size_t>(i)] =
        delta_n_at(grid_t[static_cast<std::size_t>(i)]);
  }

  ScalingStudy out;
  for (int i = 1; i + 1 < n; ++i) {
    const std::size_t s = static_cast<std::size_t>(i);
    if (grid_dn[s] > grid_dn[s - 1] && grid_dn[s] > grid_dn[s + 1] &&
        grid_dn[s] > 0.0)
      out.envelope.push_back({grid_t[s], grid_dn[s]});
  }
  if (out.envelope.size() < 4)
    throw std::invalid_argument(
        "scaling_study: too few envelope maxima in the given span");

  // Least squares on log(delta_n) vs log(t); p is minus the slope.
  const std::size_t m = out.envelope.size();
  double sx = 0.0, sy = 0.0;
  for (const auto& e : out.envelope) {
    sx += std::log(e.duration);
    sy += std::log(e.delta_n);
  }
  const double mx = sx / static_cast<double>(m),
               my = sy / static_cast<double>(m);
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (const auto& e : out.envelope) {
    const double dx = std::log(e.duration) - mx;
    const double dy = std::log(e.delta_n) - my;
    sxx += dx * dx;
    sxy += dx * dy;
    syy += dy * dy;
  }
  const double slope = sxy / sxx;
  out.exponent = -slope;
  const double ssr = std::max(0.0, syy - slope * sxy);
  out.exponent_stderr =
      (m > 2) ? std::sqrt(ssr / (static_cast<double>(m) - 2.0) / sxx) : 0.0;

  out.samples.reserve(times.size());
  for (double t : times) out.samples.push_back({t, delta_n_at(t)});
  return out;
}

}  // namespace shuttle::spectral

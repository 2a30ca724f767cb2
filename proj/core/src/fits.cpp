#include "shuttle/fits.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <stdexcept>

#include "shuttle/constants.hpp"

namespace shuttle::infer {

namespace {

// Binomial standard error with a +1/+2 floor so survival of exactly 0 or 1
// still gets a finite weight.
double binomial_sigma(double value, double trials) {
  if (!(trials > 0.0)) return 1.0;
  const double p = (value * trials + 1.0) / (trials + 2.0);
  return std::sqrt(p * (1.0 - p) / trials);
}

// Solves truncation_tail(zeta) = target on the monotone branch.
double invert_tail(double target) {
  double lo = 1e-4, hi = 100.0;
  if (target <= truncation_tail(lo)) return lo;
  if (target >= truncation_tail(hi)) return hi;
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    (truncation_tail(mid) < target ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

struct LinePoint {
  double x, y, w;  // w = 1/sigma^2
};

struct LineFit {
  double slope, intercept, slope_sigma, intercept_sigma, ssr;
};

LineFit weighted_line(const std::vector<LinePoint>& pts, bool scale_by_variance) {
  double sw = 0, swx = 0, swy = 0;
  for (const auto& p : pts) {
    sw += p.w;
    swx += p.w * p.x;
    swy += p.w * p.y;
  }
  const double mx = swx / sw, my = swy / sw;
  double sxx = 0, sxy = 0;
  for (const auto& p : pts) {
    sxx += p.w * (p.x - mx) * (p.x - mx);
    sxy += p.w * (p.x - mx) * (p.y - my);
  }
  if (!(sxx > 0.0))
    throw std::invalid_argument("linear fit: degenerate abscissa span");
  LineFit f;
  f.slope = sxy / sxx;
  f.intercept = my - f.slope * mx;
  f.ssr = 0.0;
  for (const auto& p : pts) {
    const double r = p.y - (f.intercept + f.slope * p.x);
    f.ssr += p.w * r * r;
  }
  const double dof = static_cast<double>(pts.size()) - 2.0;
  const double variance = scale_by_variance && dof > 0.0 ? f.ssr / dof : 1.0;
  f.slope_sigma = std::sqrt(variance / sxx);
  f.intercept_sigma = std::sqrt(variance * (1.0 / sw + mx * mx / sxx));
  return f;
}

FitResult pack(const LevMarOutcome& lm, const std::vector<std::string>& names) {
  FitResult out;
  out.residual_norm = lm.residual_norm;
  out.converged = lm.converged;
  out.iterations = lm.iterations;
  for (std::size_t j = 0; j < names.size(); ++j) {
    out.parameters[names[j]] = lm.params[j];
    out.sigmas[names[j]] = lm.sigmas[j];
  }
  return out;
}

}  // namespace

SurvivalFit fit_survival(const std::vector<SurvivalPoint>& points, double t0,
                         double u0) {
  if (points.size() < 4)
    throw std::invalid_argument("fit_survival: need at least 4 points");
  std::set<double> distinct;
  for (const auto& p : points) distinct.insert(p.n);
  if (distinct.size() != points.size())
    throw std::invalid_argument("fit_survival: cycle counts must be distinct");
  if (!(t0 >= 0.0) || !(u0 > 0.0))
    throw std::invalid_argument("fit_survival: invalid fixed t0/u0");

  auto by_n = points;
  std::sort(by_n.begin(), by_n.end(),
            [](const auto& a, const auto& b) { return a.n < b.n; });
  const double p0_init =
      std::min(1.0, std::max_element(points.begin(), points.end(),
                                     [](const auto& a, const auto& b) {
                                       return a.survival < b.survival;
                                     })
                        ->survival);
  // Heating scale from the drop between the extreme cycle counts.
  const double drop = by_n.front().survival - by_n.back().survival;
  double dt_init = 0.0;
  if (drop > 1e-9 && by_n.back().n > 0.0) {
    const double zeta_last = invert_tail(std::min(drop, 0.999));
    dt_init = std::max(0.0, (zeta_last * u0 - t0) / by_n.back().n);
  }

  std::vector<double> sigma(points.size());
  for (std::size_t i = 0; i < points.size(); ++i)
    sigma[i] = binomial_sigma(points[i].survival, points[i].trials);

  auto residuals = [&](const std::vector<double>& q, std::vector<double>& r) {
    for (std::size_t i = 0; i < points.size(); ++i) {
      const double model =
          q[0] - truncation_tail((t0 + q[1] * points[i].n) / u0);
      r[i] = (model - points[i].survival) / sigma[i];
    }
  };

  LevMarOptions opts;
  opts.lower = {0.0, 0.0};
  opts.upper = {1.0, std::numeric_limits<double>::infinity()};
  opts.step_scale = {0.02, std::max(dt_init, 1e-4 * t0 + 1e-7 * u0)};
  const LevMarOutcome lm =
      levmar_fit(residuals, {p0_init, dt_init}, points.size(), opts);

  SurvivalFit out;
  out.fit = pack(lm, {"p0", "delta_t"});
  out.model = SurvivalModel{lm.params[0], t0, lm.params[1], u0};
  return out;
}

FitResult fit_power_law(const std::vector<TimedSurvivalPoint>& points,
                        const PowerLawContext& context) {
  if (points.size() < 5)
    throw std::invalid_argument("fit_power_law: need at least 5 points");
  std::set<double> distinct;
  for (const auto& p : points) distinct.insert(p.t_us);
  if (distinct.size() < 5 ||
      *distinct.rbegin() <= *distinct.begin() * (1.0 + 1e-12))
    throw std::invalid_argument("fit_power_law: degenerate time span");
  if (!(context.u0 > 0.0) || context.segments <= 0)
    throw std::invalid_argument("fit_power_law: invalid context");

  const double t0_uK = context.t0 * 1e6;
  const double u0_uK = context.u0 * 1e6;
  const double seg = static_cast<double>(context.segments);

  // Start values: invert the survival law point-wise where possible, then
  // line-fit log(delta_t) vs log(t).
  std::vector<LinePoint> loglog;
  for (const auto& p : points) {
    const double tail = context.p0 - p.survival;
    if (tail < 1e-6 || tail > 0.999) continue;
    const double dt_uK = (invert_tail(tail) * u0_uK - t0_uK) / seg;
    if (dt_uK > 0.0)
      loglog.push_back({std::log(p.t_us), std::log(dt_uK), 1.0});
  }
  double p_init = 6.0, ln_a_init;
  if (loglog.size() >= 2) {
    const LineFit line = weighted_line(loglog, false);
    p_init = std::clamp(-line.slope, 0.5, 25.0);
    ln_a_init = line.intercept;
    if (-line.slope != p_init)  // re-anchor when the slope was clamped
      ln_a_init = loglog.front().y + p_init * loglog.front().x;
  } else if (loglog.size() == 1) {
    ln_a_init = loglog.front().y + p_init * loglog.front().x;
  } else {
    const double t_mid = points[points.size() / 2].t_us;
    ln_a_init = std::log(std::max(t0_uK / seg, 1e-6)) + p_init * std::log(t_mid);
  }

  std::vector<double> sigma(points.size());
  for (std::size_t i = 0; i < points.size(); ++i)
    sigma[i] = binomial_sigma(points[i].survival, points[i].trials);

  auto residuals = [&](const std::vector<double>& q, std::vector<double>& r) {
    for (std::size_t i = 0; i < points.size(); ++i) {
      const double dt_uK = std::exp(q[0] - q[1] * std::log(points[i].t_us));
      const double zeta = (t0_uK + seg * dt_uK) / u0_uK;
      const double model = context.p0 - truncation_tail(zeta);
      r[i] = (model - points[i].survival) / sigma[i];
    }
  };

  LevMarOptions opts;
  opts.lower = {-200.0, 0.0};
  opts.upper = {400.0, 30.0};
  opts.step_scale = {1.0, 1.0};
  const LevMarOutcome lm =
      levmar_fit(residuals, {ln_a_init, p_init}, points.size(), opts);

  FitResult out;
  out.residual_norm = lm.residual_norm;
  out.converged = lm.converged;
  out.iterations = lm.iterations;
  const double a = std::exp(lm.params[0]);
  out.parameters["A"] = a;
  out.parameters["p"] = lm.params[1];
  out.sigmas["A"] = a * lm.sigmas[0];
  out.sigmas["p"] = lm.sigmas[1];
  return out;
}

FitResult fit_power_law_fixed_exponent(
    const std::vector<TimedSurvivalPoint>& points,
    const PowerLawContext& context, double exponent) {
  if (points.size() < 3)
    throw std::invalid_argument("fit_power_law_fixed_exponent: need >= 3 points");
  if (!(context.u0 > 0.0) || context.segments <= 0)
    throw std::invalid_argument("fit_power_law_fixed_exponent: invalid context");
  const double t0_uK = context.t0 * 1e6;
  const double u0_uK = context.u0 * 1e6;
  const double seg = static_cast<double>(context.segments);

  double ln_a_init = std::log(std::max(t0_uK / seg, 1e-6)) +
                     exponent * std::log(points[points.size() / 2].t_us);
  for (const auto& p : points) {
    const double tail = context.p0 - p.survival;
    if (tail < 1e-6 || tail > 0.999) continue;
    const double dt_uK = (invert_tail(tail) * u0_uK - t0_uK) / seg;
    if (dt_uK > 0.0) {
      ln_a_init = std::log(dt_uK) + exponent * std::log(p.t_us);
      break;
    }
  }

  std::vector<double> sigma(points.size());
  for (std::size_t i = 0; i < points.size(); ++i)
    sigma[i] = binomial_sigma(points[i].survival, points[i].trials);

  auto residuals = [&](const std::vector<double>& q, std::vector<double>& r) {
    for (std::size_t i = 0; i < points.size(); ++i) {
      const double dt_uK = std::exp(q[0] - exponent * std::log(points[i].t_us));
      const double model =
          context.p0 - truncation_tail((t0_uK + seg * dt_uK) / u0_uK);
      r[i] = (model - points[i].survival) / sigma[i];
    }
  };

  LevMarOptions opts;
  opts.lower = {-200.0};
  opts.upper = {400.0};
  opts.step_scale = {1.0};
  const LevMarOutcome lm = levmar_fit(residuals, {ln_a_init}, points.size(), opts);

  FitResult out;
  out.residual_norm = lm.residual_norm;
  out.converged = lm.converged;
  out.iterations = lm.iterations;
  const double a = std::exp(lm.params[0]);
  out.parameters["A"] = a;
  out.parameters["p"] = exponent;
  out.sigmas["A"] = a * lm.sigmas[0];
  out.sigmas["p"] = 0.0;
  return out;
}

FitResult fit_mis_linear(const std::vector<MisalignmentPoint>& points,
                         const phys::TrapConfig& trap, double basic_total_uK) {
  if (points.size() < 3)
    throw std::invalid_argument("fit_mis_linear: need at least 3 points");
  std::vector<LinePoint> pts;
  pts.reserve(points.size());
  for (const auto& p : points) pts.push_back({p.delta_sq_nm2, p.delta_t_uK, 1.0});
  const LineFit line = weighted_line(pts, true);

  // slope is uK/nm^2; alpha comes from delta_t_mis = alpha m w^2 dx^2 / 2kB.
  const double slope_si = line.slope * 1e-6 / 1e-18;  // K / m^2
  const double alpha = 2.0 * slope_si * phys::kBoltzmann /
                       (trap.mass() * trap.omega0() * trap.omega0());

  FitResult out;
  out.converged = true;
  out.iterations = 0;
  out.residual_norm = std::sqrt(line.ssr);
  out.parameters["slope_uK_nm2"] = line.slope;
  out.parameters["intercept_uK"] = line.intercept;
  out.parameters["alpha"] = alpha;
  out.parameters["transport_exp_uK"] = line.intercept - basic_total_uK;
  out.sigmas["slope_uK_nm2"] = line.slope_sigma;
  out.sigmas["intercept_uK"] = line.intercept_sigma;
  out.sigmas["alpha"] = line.slope == 0.0
                            ? 0.0
                            : std::abs(alpha * line.slope_sigma / line.slope);
  out.sigmas["transport_exp_uK"] = line.intercept_sigma;
  return out;
}

FitResult fit_gaussian2d(CalibrationScan& scan) {
  const auto& grid = scan.grid;
  if (grid.size() < 16)
    throw std::invalid_argument("fit_gaussian2d: need a grid of >= 4x4 points");
  std::set<double> fxs, fys;
  for (const auto& p : grid) {
    fxs.insert(p.fx_mhz);
    fys.insert(p.fy_mhz);
    if (!(p.survival >= 0.0 && p.survival <= 1.0))
      throw std::domain_error("fit_gaussian2d: survival must be in [0,1]");
  }
  if (fxs.size() < 4 || fys.size() < 4)
    throw std::invalid_argument("fit_gaussian2d: need >= 4 distinct rows/cols");

  const double fx_lo = *fxs.begin(), fx_hi = *fxs.rbegin();
  const double fy_lo = *fys.begin(), fy_hi = *fys.rbegin();
  const auto peak = std::max_element(
      grid.begin(), grid.end(),
      [](const auto& a, const auto& b) { return a.survival < b.survival; });
  const auto low = std::min_element(
      grid.begin(), grid.end(),
      [](const auto& a, const auto& b) { return a.survival < b.survival; });

  const bool peak_on_edge = peak->fx_mhz == fx_lo || peak->fx_mhz == fx_hi ||
                            peak->fy_mhz == fy_lo || peak->fy_mhz == fy_hi;

  std::vector<double> sigma(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i)
    sigma[i] = binomial_sigma(grid[i].survival, grid[i].trials);

  // Widths enter as log so they stay positive without box constraints.
  auto residuals = [&](const std::vector<double>& q, std::vector<double>& r) {
    const double offset = q[0], amp = q[1], cx = q[2], cy = q[3];
    const double sx = std::exp(q[4]), sy = std::exp(q[5]);
    for (std::size_t i = 0; i < grid.size(); ++i) {
      const double ux = (grid[i].fx_mhz - cx) / sx;
      const double uy = (grid[i].fy_mhz - cy) / sy;
      const double model = offset + amp * std::exp(-0.5 * (ux * ux + uy * uy));
      r[i] = (model - grid[i].survival) / sigma[i];
    }
  };

  const double span_x = fx_hi - fx_lo, span_y = fy_hi - fy_lo;
  std::vector<double> init = {low->survival,
                              peak->survival - low->survival,
                              peak->fx_mhz,
                              peak->fy_mhz,
                              std::log(0.5 * span_x),
                              std::log(0.5 * span_y)};
  LevMarOptions opts;
  opts.lower = {-1.0, -2.0, fx_lo - span_x, fy_lo - span_y,
                std::log(1e-3 * span_x), std::log(1e-3 * span_y)};
  opts.upper = {2.0, 2.0, fx_hi + span_x, fy_hi + span_y,
                std::log(100.0 * span_x), std::log(100.0 * span_y)};
  opts.step_scale = {0.05, 0.1, 0.1 * span_x, 0.1 * span_y, 0.5, 0.5};
  const LevMarOutcome lm = levmar_fit(residuals, init, grid.size(), opts);

  LevMarOutcome unpacked = lm;
  unpacked.params[4] = std::exp(lm.params[4]);
  unpacked.params[5] = std::exp(lm.params[5]);
  unpacked.sigmas[4] = unpacked.params[4] * lm.sigmas[4];
  unpacked.sigmas[5] = unpacked.params[5] * lm.sigmas[5];
  FitResult out = pack(unpacked, {"offset", "amplitude", "cx_mhz", "cy_mhz",
                                  "sigma_x_mhz", "sigma_y_mhz"});
  if (peak_on_edge) out.notes.push_back("maximum-on-grid-boundary");

  const double cx = lm.params[2], cy = lm.params[3];
  if (cx < fx_lo || cx > fx_hi || cy < fy_lo || cy > fy_hi) {
    out.notes.push_back("fitted-center-outside-scan");
    out.converged = false;
  }
  scan.offset = unpacked.params[0];
  scan.amplitude = unpacked.params[1];
  scan.center_fx_mhz = cx;
  scan.center_fy_mhz = cy;
  scan.width_fx_mhz = unpacked.params[4];
  scan.width_fy_mhz = unpacked.params[5];
  scan.fitted = out.converged;
  return out;
}

FitResult fit_fidelity_decay(const std::vector<FidelityPoint>& points) {
  if (points.size() < 3)
    throw std::invalid_argument("fit_fidelity_decay: need at least 3 points");
  for (const auto& p : points)
    if (!(p.fidelity > 0.0))
      throw std::domain_error("fit_fidelity_decay: fidelity must be > 0");

  // Log-linear start values, then the weighted fit in linear space.
  std::vector<LinePoint> loglin;
  loglin.reserve(points.size());
  for (const auto& p : points) {
    const double s = p.stderr_val > 0.0 ? p.stderr_val : 1.0;
    const double sigma_log = s / p.fidelity;
    loglin.push_back({p.n, std::log(p.fidelity), 1.0 / (sigma_log * sigma_log)});
  }
  double f0_init, f_init;
  try {
    const LineFit line = weighted_line(loglin, false);
    f0_init = std::exp(line.intercept);
    f_init = std::exp(line.slope);
  } catch (const std::invalid_argument&) {
    throw std::invalid_argument("fit_fidelity_decay: degenerate cycle span");
  }

  auto residuals = [&](const std::vector<double>& q, std::vector<double>& r) {
    for (std::size_t i = 0; i < points.size(); ++i) {
      const double s = points[i].stderr_val > 0.0 ? points[i].stderr_val : 1.0;
      const double model = q[0] * std::pow(q[1], points[i].n);
      r[i] = (model - points[i].fidelity) / s;
    }
  };

  LevMarOptions opts;
  opts.lower = {1e-9, 1e-9};
  opts.upper = {2.0, 1.5};
  opts.step_scale = {0.1, 0.01};
  const LevMarOutcome lm = levmar_fit(
      residuals, {std::clamp(f0_init, 1e-6, 2.0), std::clamp(f_init, 1e-6, 1.5)},
      points.size(), opts);
  return pack(lm, {"f0", "per_cycle_fidelity"});
}

}  // namespace shuttle::infer

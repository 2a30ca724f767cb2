#include "shuttle/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "shuttle/constants.hpp"

namespace shuttle::spectral {

namespace {

constexpr double kPi = std::numbers::pi;
using cd = std::complex<double>;
using cld = std::complex<long double>;

// E(theta) = int_0^1 exp(i theta u) du = exp(i theta/2) sinc(theta/2).
cd cexp_int(double theta) {
  const double h = 0.5 * theta;
  const double sinc = (std::abs(h) < 1e-8) ? 1.0 - h * h / 6.0
                                           : std::sin(h) / h;
  return std::polar(sinc, h);
}

// Coefficients of the second derivative of a monomial-coefficient polynomial.
std::vector<double> second_derivative_coeffs(const std::vector<double>& c) {
  if (c.size() < 3) return {};
  std::vector<double> d(c.size() - 2);
  for (std::size_t j = 2; j < c.size(); ++j)
    d[j - 2] = c[j] * static_cast<double>(j) * static_cast<double>(j - 1);
  return d;
}

// j-th derivative of the polynomial at u.
double eval_poly_deriv(const std::vector<double>& c, double u, int d) {
  const int deg = static_cast<int>(c.size()) - 1;
  if (d > deg) return 0.0;
  double acc = 0.0;
  for (int j = deg; j >= d; --j) {
    double fall = 1.0;
    for (int q = 0; q < d; ++q) fall *= static_cast<double>(j - q);
    acc = acc * u + c[static_cast<std::size_t>(j)] * fall;
  }
  return acc;
}

// M_n(z) = int_0^1 y^n exp(-i z y) dy for n = 0..nmax via the Maclaurin
// series sum_m (-iz)^m / (m! (n+m+1)). Accurate for |z| up to ~10.
void moment_series(double z, int nmax, std::vector<cld>& moments) {
  moments.assign(static_cast<std::size_t>(nmax) + 1, cld(0.0L, 0.0L));
  const cld step(0.0L, static_cast<long double>(-z));
  cld term(1.0L, 0.0L);
  for (int m = 0; m < 400; ++m) {
    if (m > 0) term *= step / static_cast<long double>(m);
    const long double mag = std::abs(term);
    for (int n = 0; n <= nmax; ++n)
      moments[static_cast<std::size_t>(n)] +=
          term / static_cast<long double>(n + m + 1);
    if (m > std::abs(z) && mag < 1e-28L) break;
  }
}

// int_0^1 p(u) exp(-i W u) du by splitting [0,1] so each piece sees a
// phase swing |W h| <= 8, then applying the moment series per piece.
cd poly_fourier_series(const std::vector<double>& p, double w) {
  const int deg = static_cast<int>(p.size()) - 1;
  const int pieces = std::max(1, static_cast<int>(std::ceil(std::abs(w) / 8.0)));
  const double h = 1.0 / pieces;
  std::vector<cld> moments;
  moment_series(w * h, deg, moments);
  std::vector<double> shifted(p.size());
  cld total(0.0L, 0.0L);
  for (int piece = 0; piece < pieces; ++piece) {
    const double a = piece * h;
    // Taylor shift: q_n = sum_{j>=n} p_j C(j,n) a^(j-n)
    for (int n = 0; n <= deg; ++n) {
      double qn = 0.0;
      double binom = 1.0;  // C(n,n)
      double apow = 1.0;
      for (int j = n; j <= deg; ++j) {
        qn += p[static_cast<std::size_t>(j)] * binom * apow;
        binom *= static_cast<double>(j + 1) / static_cast<double>(j + 1 - n);
        apow *= a;
      }
      shifted[static_cast<std::size_t>(n)] = qn;
    }
    // int_0^h q(v) exp(-iW(a+v)) dv = exp(-iWa) sum_n q_n h^(n+1) M_n(Wh)
    cld piece_sum(0.0L, 0.0L);
    long double hpow = static_cast<long double>(h);
    for (int n = 0; n <= deg; ++n) {
      piece_sum += static_cast<long double>(shifted[static_cast<std::size_t>(n)]) *
                   hpow * moments[static_cast<std::size_t>(n)];
      hpow *= h;
    }
    const double phase = -w * a;
    piece_sum *= cld(std::cos(phase), std::sin(phase));
    total += piece_sum;
  }
  return cd(static_cast<double>(total.real()), static_cast<double>(total.imag()));
}

// Same integral by repeated integration by parts; the antiderivative is
// exp(-iWu) sum_j (-1)^j p^(j)(u) / (-iW)^(j+1). Stable once |W| exceeds
// the polynomial degree.
cd poly_fourier_parts(const std::vector<double>& p, double w) {
  const int deg = static_cast<int>(p.size()) - 1;
  const cd inv_miw = 1.0 / cd(0.0, -w);
  cd sum0(0.0, 0.0), sum1(0.0, 0.0);
  cd factor = inv_miw;
  double sign = 1.0;
  for (int j = 0; j <= deg; ++j) {
    sum0 += sign * eval_poly_deriv(p, 0.0, j) * factor;
    sum1 += sign * eval_poly_deriv(p, 1.0, j) * factor;
    factor *= inv_miw;
    sign = -sign;
  }
  const cd phase1 = std::polar(1.0, -w);
  return phase1 * sum1 - sum0;
}

// int_0^1 lambda''(u) exp(-i W u) du for a unit profile.
cd profile_accel_fourier_unit(const traj::MotionProfile& profile, double w) {
  if (profile.kind() == traj::ProfileKind::kSinusoidal) {
    // lambda''(u) = 2*pi*sin(2*pi*u)
    const cd integral =
        (cexp_int(2.0 * kPi - w) - cexp_int(-2.0 * kPi - w)) / cd(0.0, 2.0);
    return 2.0 * kPi * integral;
  }
  const std::vector<double> p2 = second_derivative_coeffs(profile.coefficients());
  if (p2.empty()) return cd(0.0, 0.0);
  const int deg = static_cast<int>(p2.size()) - 1;
  const double w_switch = std::max(20.0, static_cast<double>(deg) + 10.0);
  if (std::abs(w) >= w_switch) return poly_fourier_parts(p2, w);
  return poly_fourier_series(p2, w);
}

cd spectrum_closed_form(const traj::MotionPlan& plan, double omega) {
  const double w = omega * plan.duration;
  return plan.distance / plan.duration *
         profile_accel_fourier_unit(plan.profile, w);
}

// Mean |lambda''| over [0,1]; sets the absolute noise floor used when the
// oscillatory integral itself cancels to ~0.
double profile_accel_mass(const traj::MotionProfile& profile) {
  constexpr int kSamples = 512;
  double acc = 0.0;
  for (int i = 0; i < kSamples; ++i) {
    const double u = (i + 0.5) / kSamples;
    acc += std::abs(profile.eval(u, 2));
  }
  return acc / kSamples;
}

cd simpson_spectrum(const traj::MotionPlan& plan, double omega, int intervals) {
  const double t_total = plan.duration;
  const double h = t_total / intervals;
  const double scale = plan.distance / (t_total * t_total);
  // High-order polynomials have large alternating coefficients; extended
  // precision in the integrand keeps the refinement limited by truncation,
  // not by evaluation noise.
  std::vector<long double> p2;
  if (plan.profile.kind() == traj::ProfileKind::kSmoothstep)
    for (double c : second_derivative_coeffs(plan.profile.coefficients()))
      p2.push_back(static_cast<long double>(c));
  auto accel_unit = [&](double s) -> long double {
    if (p2.empty()) return plan.profile.eval(s, 2);
    long double acc = 0.0L;
    for (std::size_t j = p2.size(); j-- > 0;)
      acc = acc * static_cast<long double>(s) + p2[j];
    return acc;
  };
  auto f = [&](int i) -> cld {
    const double t = i * h;
    const double s = std::min(t / t_total, 1.0);
    const long double a = scale * accel_unit(s);
    const double phase = -omega * t;
    return cld(a * std::cos(phase), a * std::sin(phase));
  };
  cld acc = f(0) + f(intervals);
  for (int i = 1; i < intervals; i += 2) acc += 4.0L * f(i);
  for (int i = 2; i < intervals; i += 2) acc += 2.0L * f(i);
  acc *= static_cast<long double>(h) / 3.0L;
  return cd(static_cast<double>(acc.real()), static_cast<double>(acc.imag()));
}

}  // namespace

std::complex<double> spectrum_quadrature(const traj::MotionPlan& plan,
                                         double omega,
                                         const QuadratureOptions& opts) {
  if (plan.distance == 0.0) return cd(0.0, 0.0);
  const double periods_exp = omega * plan.duration / (2.0 * kPi);
  const double periods_profile =
      std::max(1, plan.profile.kind() == traj::ProfileKind::kSmoothstep
                      ? plan.profile.order()
                      : 1);
  const double n_wanted =
      std::ceil(std::max({256.0, opts.samples_per_period * periods_exp,
                          opts.samples_per_period * periods_profile}));
  if (n_wanted > opts.max_samples)
    throw std::runtime_error(
        "spectrum_quadrature: omega * duration exceeds the sample budget");
  int n = static_cast<int>(n_wanted);
  n += n % 2;

  // Refining below ~13 digits of the integrand mass only chases roundoff.
  const double abs_floor = 1e-13 * plan.distance / plan.duration *
                           profile_accel_mass(plan.profile);
  cd coarse = simpson_spectrum(plan, omega, n);
  while (true) {
    const cd fine = simpson_spectrum(plan, omega, 2 * n);
    const double err = std::abs(fine - coarse);
    if (err <= opts.richardson_rel_tol * std::abs(fine) || err <= abs_floor)
      return fine;
    n *= 2;
    if (2 * n > opts.max_samples)
      throw std::runtime_error(
          "spectrum_quadrature: no convergence within sample budget");
    coarse = fine;
  }
}

std::complex<double> acceleration_spectrum(const traj::MotionPlan& plan,
                                           double omega,
                                           SpectrumMethod method) {
  if (!(omega >= 0.0))
    throw std::domain_error("acceleration_spectrum: omega must be >= 0");
  switch (method) {
    case SpectrumMethod::kClosedForm:
      return spectrum_closed_form(plan, omega);
    case SpectrumMethod::kQuadrature:
      return spectrum_quadrature(plan, omega);
    case SpectrumMethod::kChecked:
      break;
  }
  const cd closed = spectrum_closed_form(plan, omega);
  const cd quad = spectrum_quadrature(plan, omega);
  // Relative agreement plus an absolute floor that covers exact zeros of
  // the oscillatory integral (e.g. omega = 0, boundary-cancelled phases).
  const double floor = 1e-12 * (std::abs(plan.distance) / plan.duration) *
                       profile_accel_mass(plan.profile);
  if (std::abs(closed - quad) > 1e-8 * std::abs(closed) + floor)
    throw std::runtime_error(
        "acceleration_spectrum: closed form and quadrature disagree");
  return closed;
}

HeatingResult delta_n(const traj::MotionPlan& plan,
                      const phys::TrapConfig& trap) {
  const cd amplitude =
      acceleration_spectrum(plan, trap.omega0(), SpectrumMethod::kClosedForm);
  const double xzpf = phys::zero_point_length(trap);
  const double denom = 2.0 * xzpf * trap.omega0();
  HeatingResult out;
  out.spectrum_at_omega0 = amplitude;
  out.delta_n = std::norm(amplitude) / (denom * denom);
  out.delta_t = out.delta_n * phys::kHbar * trap.omega0() / phys::kBoltzmann;
  return out;
}

traj::MotionPlan misalignment_plan(const traj::MotionProfile& exchange_profile,
                                   double delta_x, double duration) {
  if (!(delta_x >= 0.0))
    throw std::domain_error("misalignment_plan: delta_x must be >= 0");
  return traj::make_plan(exchange_profile, delta_x, duration,
                         traj::PlanPurpose::kAmplitudeExchange);
}

}  // namespace shuttle::spectral

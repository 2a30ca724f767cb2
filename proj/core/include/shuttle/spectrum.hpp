#ifndef SHUTTLE_SPECTRUM_HPP
#define SHUTTLE_SPECTRUM_HPP

#include <complex>

#include "shuttle/profile.hpp"
#include "shuttle/trap.hpp"

namespace shuttle::spectral {

/// Phonon gain of one transport or exchange operation.
struct HeatingResult {
  double delta_n = 0.0;  // mean vibrational quantum gain
  double delta_t = 0.0;  // K, delta_n * hbar*omega0 / kB
  std::complex<double> spectrum_at_omega0;  // m/s
};

enum class SpectrumMethod {
  kClosedForm,   // integration by parts / analytic integral
  kQuadrature,   // oscillation-aware composite Simpson
  kChecked,      // both routes, error if they disagree beyond 1e-8 relative
};

struct QuadratureOptions {
  double richardson_rel_tol = 1e-9;
  int samples_per_period = 40;
  int max_samples = 1 << 23;
};

/// Finite-time Fourier transform of the plan's acceleration,
/// a~(omega) = int_0^T a(t) exp(-i omega t) dt.
std::complex<double> acceleration_spectrum(
    const traj::MotionPlan& plan, double omega,
    SpectrumMethod method = SpectrumMethod::kChecked);

std::complex<double> spectrum_quadrature(const traj::MotionPlan& plan,
                                         double omega,
                                         const QuadratureOptions& opts = {});

/// Mean phonon gain of the driven mode,
/// delta_n = |a~(omega0)|^2 / (2 x_zpf omega0)^2.
HeatingResult delta_n(const traj::MotionPlan& plan,
                      const phys::TrapConfig& trap);

/// Residual S/M trap misalignment turns an amplitude exchange into an
/// effective transport of the combined trap minimum over delta_x; the
/// returned plan feeds delta_n directly.
traj::MotionPlan misalignment_plan(const traj::MotionProfile& exchange_profile,
                                   double delta_x, double duration);

}  // namespace shuttle::spectral

#endif

#ifndef SHUTTLE_FITS_HPP
#define SHUTTLE_FITS_HPP

#include <vector>

#include "shuttle/levmar.hpp"
#include "shuttle/survival.hpp"
#include "shuttle/trap.hpp"

namespace shuttle::infer {

/// Survival after n cycles; trials <= 0 means unit weight, otherwise the
/// binomial standard error from the trial count is used.
struct SurvivalPoint {
  double n = 0.0;
  double survival = 0.0;
  double trials = 0.0;
};

/// Survival after a fixed segment count vs one-way transport time.
struct TimedSurvivalPoint {
  double t_us = 0.0;
  double survival = 0.0;
  double trials = 0.0;
};

struct MisalignmentPoint {
  double delta_sq_nm2 = 0.0;  // (dx_start^2 + dx_target^2)
  double delta_t_uK = 0.0;    // measured heating per inter-site transfer
};

struct FidelityPoint {
  double n = 0.0;
  double fidelity = 0.0;
  double stderr_val = 0.0;  // <= 0 means unit weight
};

struct ScanPoint {
  double fx_mhz = 0.0;
  double fy_mhz = 0.0;
  double survival = 0.0;
  double trials = 0.0;
};

struct SurvivalFit {
  FitResult fit;  // keys: p0, delta_t (Kelvin)
  SurvivalModel model;
};

/// Weighted fit of the truncated-Boltzmann law over (p0, delta_t) with t0
/// and u0 held fixed (Kelvin).
SurvivalFit fit_survival(const std::vector<SurvivalPoint>& points, double t0,
                         double u0);

struct PowerLawContext {
  long segments = 51;
  double t0 = 0.0;  // K
  double u0 = 0.0;  // K
  double p0 = 1.0;
};

/// Fits survival(t) with per-segment heating A * t^-p substituted into the
/// survival law. Keys: A (uK * us^p, i.e. delta_t_uK = A * t_us^-p), p.
FitResult fit_power_law(const std::vector<TimedSurvivalPoint>& points,
                        const PowerLawContext& context);

/// Same model with the exponent held fixed; only A is free.
FitResult fit_power_law_fixed_exponent(
    const std::vector<TimedSurvivalPoint>& points,
    const PowerLawContext& context, double exponent);

/// Ordinary least squares of heating vs squared mismatch. Keys:
/// slope_uK_nm2, intercept_uK, alpha, transport_exp_uK (intercept minus the
/// supplied well-aligned exchange total).
FitResult fit_mis_linear(const std::vector<MisalignmentPoint>& points,
                         const phys::TrapConfig& trap, double basic_total_uK);

/// AOD frequency scan around one static trap with its fitted optimum.
struct CalibrationScan {
  std::vector<ScanPoint> grid;
  double center_fx_mhz = 0.0;
  double center_fy_mhz = 0.0;
  double width_fx_mhz = 0.0;
  double width_fy_mhz = 0.0;
  double amplitude = 0.0;
  double offset = 0.0;
  bool fitted = false;
};

/// 2D Gaussian peak fit in frequency space. Keys: cx_mhz, cy_mhz,
/// sigma_x_mhz, sigma_y_mhz, amplitude, offset.
FitResult fit_gaussian2d(CalibrationScan& scan);

/// Weighted fit of F(n) = f0 * f^n. Keys: f0, per_cycle_fidelity.
FitResult fit_fidelity_decay(const std::vector<FidelityPoint>& points);

}  // namespace shuttle::infer

#endif

#ifndef SHUTTLE_CALIBRATION_HPP
#define SHUTTLE_CALIBRATION_HPP

namespace shuttle::infer {

/// AOD frequency-to-position conversion, MHz per micrometer.
/// 1.615 MHz steers the moving trap by 5.6 um.
inline constexpr double kMhzPerUm = 1.615 / 5.6;

/// Converts an AOD frequency change (MHz) into a trap displacement (um).
double freq_to_position(double delta_f_mhz);

/// Squared mismatch (nm^2) picked up over one inter-site transfer:
/// dx_start^2 + dx_target^2.
double combine_mismatch(double dx_start_nm, double dx_target_nm);

/// First-order uncertainty of combine_mismatch given per-trap measurement
/// errors: sqrt((2 dx1 s1)^2 + (2 dx2 s2)^2).
double combine_mismatch_sigma(double dx_start_nm, double sigma_start_nm,
                              double dx_target_nm, double sigma_target_nm);

}  // namespace shuttle::infer

#endif

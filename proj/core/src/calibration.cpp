#include "shuttle/calibration.hpp"

#include <cmath>
#include <stdexcept>

namespace shuttle::infer {

double freq_to_position(double delta_f_mhz) { return delta_f_mhz / kMhzPerUm; }

double combine_mismatch(double dx_start_nm, double dx_target_nm) {
  if (dx_start_nm < 0.0 || dx_target_nm < 0.0)
    throw std::domain_error("combine_mismatch: mismatches must be >= 0");
  return dx_start_nm * dx_start_nm + dx_target_nm * dx_target_nm;
}

double combine_mismatch_sigma(double dx_start_nm, double sigma_start_nm,
                              double dx_target_nm, double sigma_target_nm) {
  if (sigma_start_nm < 0.0 || sigma_target_nm < 0.0)
    throw std::domain_error("combine_mismatch_sigma: sigmas must be >= 0");
  return std::hypot(2.0 * dx_start_nm * sigma_start_nm,
                    2.0 * dx_target_nm * sigma_target_nm);
}

}  // namespace shuttle::infer

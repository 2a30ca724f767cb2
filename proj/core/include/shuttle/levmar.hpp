#ifndef SHUTTLE_LEVMAR_HPP
#define SHUTTLE_LEVMAR_HPP

#include <functional>
#include <map>
#include <string>
#include <vector>

namespace shuttle::infer {

/// Outcome of any fitting operation. Parameter and uncertainty maps share
/// keys; `converged` means the relative parameter change at the last
/// accepted step fell below the tolerance.
struct FitResult {
  std::map<std::string, double> parameters;
  std::map<std::string, double> sigmas;
  double residual_norm = 0.0;
  bool converged = false;
  int iterations = 0;
  std::vector<std::string> notes;
};

struct LevMarOptions {
  int max_iterations = 200;
  double param_rel_tol = 1e-8;
  double lambda_init = 1e-3;
  // Optional box constraints; empty means unconstrained.
  std::vector<double> lower;
  std::vector<double> upper;
  // Finite-difference scale per parameter; |p| is used when empty.
  std::vector<double> step_scale;
};

struct LevMarOutcome {
  std::vector<double> params;
  std::vector<double> sigmas;
  double residual_norm = 0.0;
  bool converged = false;
  int iterations = 0;
};

/// Damped Gauss-Newton (Levenberg-Marquardt) over weighted residuals.
/// `residuals` writes the m weighted residuals for the given parameters.
/// Uncertainties come from the inverse curvature scaled by the residual
/// variance.
LevMarOutcome levmar_fit(
    const std::function<void(const std::vector<double>&, std::vector<double>&)>&
        residuals,
    std::vector<double> initial, std::size_t residual_count,
    const LevMarOptions& opts = {});

}  // namespace shuttle::infer

#endif

#include "shuttle/levmar.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace shuttle::infer {

namespace {

double clamp_to(double v, double lo, double hi) {
  return std::min(std::max(v, lo), hi);
}

}  // namespace

LevMarOutcome levmar_fit(
    const std::function<void(const std::vector<double>&, std::vector<double>&)>&
        residuals,
    std::vector<double> initial, std::size_t residual_count,
    const LevMarOptions& opts) {
  const std::size_t k = initial.size();
  const std::size_t m = residual_count;
  if (k == 0) throw std::invalid_argument("levmar_fit: no parameters");
  if (m < k) throw std::invalid_argument("levmar_fit: fewer residuals than parameters");

  const double inf = std::numeric_limits<double>::infinity();
  auto lower = [&](std::size_t j) { return opts.lower.empty() ? -inf : opts.lower[j]; };
  auto upper = [&](std::size_t j) { return opts.upper.empty() ? inf : opts.upper[j]; };
  // The caller-provided scale wins: parameters like a center frequency have
  // magnitudes far above their meaningful variation.
  auto fd_scale = [&](const std::vector<double>& p, std::size_t j) {
    if (!opts.step_scale.empty() && opts.step_scale[j] > 0.0)
      return opts.step_scale[j];
    return std::max(std::abs(p[j]), 1e-12);
  };

  std::vector<double> r(m), r_trial(m), r_lo(m), r_hi(m);
  auto cost_of = [&](const std::vector<double>& p, std::vector<double>& out) {
    residuals(p, out);
    double c = 0.0;
    for (double v : out) c += v * v;
    return std::isfinite(c) ? c : inf;
  };

  std::vector<double> params = std::move(initial);
  for (std::size_t j = 0; j < k; ++j)
    params[j] = clamp_to(params[j], lower(j), upper(j));
  double cost = cost_of(params, r);

  Eigen::MatrixXd jac(static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(k));
  double lambda = opts.lambda_init;
  bool converged = false;
  int iter = 0;

  for (; iter < opts.max_iterations && !converged; ++iter) {
    // Central-difference Jacobian of the weighted residual vector.
    std::vector<double> probe = params;
    for (std::size_t j = 0; j < k; ++j) {
      const double h = 6e-6 * fd_scale(params, j);
      probe[j] = params[j] + h;
      residuals(probe, r_hi);
      probe[j] = params[j] - h;
      residuals(probe, r_lo);
      probe[j] = params[j];
      for (std::size_t i = 0; i < m; ++i)
        jac(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
            (r_hi[i] - r_lo[i]) / (2.0 * h);
    }
    Eigen::VectorXd rv(static_cast<Eigen::Index>(m));
    for (std::size_t i = 0; i < m; ++i) rv(static_cast<Eigen::Index>(i)) = r[i];
    const Eigen::MatrixXd normal = jac.transpose() * jac;
    const Eigen::VectorXd gradient = jac.transpose() * rv;

    bool accepted = false;
    for (int attempt = 0; attempt < 40; ++attempt) {
      Eigen::MatrixXd damped = normal;
      for (std::size_t j = 0; j < k; ++j) {
        const auto jj = static_cast<Eigen::Index>(j);
        damped(jj, jj) += lambda * std::max(normal(jj, jj), 1e-30);
      }
      const Eigen::VectorXd delta = damped.ldlt().solve(-gradient);

      std::vector<double> trial = params;
      double max_rel_step = 0.0;
      for (std::size_t j = 0; j < k; ++j) {
        trial[j] = clamp_to(params[j] + delta(static_cast<Eigen::Index>(j)),
                            lower(j), upper(j));
        max_rel_step = std::max(
            max_rel_step, std::abs(trial[j] - params[j]) / fd_scale(params, j));
      }
      const double trial_cost = cost_of(trial, r_trial);
      if (trial_cost < cost) {
        params = trial;
        r = r_trial;
        cost = trial_cost;
        lambda = std::max(lambda * 0.1, 1e-14);
        accepted = true;
        if (max_rel_step < opts.param_rel_tol) converged = true;
        break;
      }
      // The proposed step is negligible and nothing improves on it: the
      // current point is the optimum at this resolution.
      if (max_rel_step < opts.param_rel_tol) {
        converged = true;
        break;
      }
      lambda *= 10.0;
      if (lambda > 1e14) break;
    }
    if (!accepted) break;
  }

  LevMarOutcome out;
  out.params = params;
  out.residual_norm = std::sqrt(cost);
  out.converged = converged;
  out.iterations = iter;

  // Uncertainties: inverse curvature scaled by the residual variance.
  std::vector<double> probe = params;
  for (std::size_t j = 0; j < k; ++j) {
    const double h = 6e-6 * fd_scale(params, j);
    probe[j] = params[j] + h;
    residuals(probe, r_hi);
    probe[j] = params[j] - h;
    residuals(probe, r_lo);
    probe[j] = params[j];
    for (std::size_t i = 0; i < m; ++i)
      jac(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
          (r_hi[i] - r_lo[i]) / (2.0 * h);
  }
  const Eigen::MatrixXd normal = jac.transpose() * jac;
  const double variance = (m > k) ? cost / static_cast<double>(m - k) : 1.0;
  const Eigen::MatrixXd cov =
      normal.completeOrthogonalDecomposition().pseudoInverse() * variance;
  out.sigmas.resize(k);
  for (std::size_t j = 0; j < k; ++j) {
    const auto jj = static_cast<Eigen::Index>(j);
    out.sigmas[j] = cov(jj, jj) > 0.0 ? std::sqrt(cov(jj, jj)) : 0.0;
  }
  return out;
}

}  // namespace shuttle::infer

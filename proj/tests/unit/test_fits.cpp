#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <vector>

#include "shuttle/calibration.hpp"
#include "shuttle/constants.hpp"
#include "shuttle/fits.hpp"
#include "shuttle/rng.hpp"
#include "shuttle/survival.hpp"

using namespace shuttle;
using namespace shuttle::infer;

namespace {

const double kOmega0 = phys::calibrate_omega(15e-6, 0.130);
const phys::TrapConfig kTrap(kOmega0, 1e-3, phys::kMassRb87);

double binomial_draw(rng::RandomStream& rs, double p, int trials) {
  int hits = 0;
  for (int i = 0; i < trials; ++i) hits += rs.uniform01() < p;
  return double(hits) / trials;
}

std::vector<SurvivalPoint> survival_curve(const SurvivalModel& m, int points,
                                          double n_step) {
  std::vector<SurvivalPoint> out;
  for (int i = 0; i < points; ++i) {
    const double n = n_step * (i + 1);
    out.push_back({n, survival_prob(m, n), 0.0});
  }
  return out;
}

}  // namespace

TEST_SUITE_BEGIN("inference");

TEST_CASE("survival fit recovers exact synthetic parameters") {
  const SurvivalModel truth{0.98, 15e-6, 0.165e-6, 1e-3};
  const auto fit = fit_survival(survival_curve(truth, 20, 50.0), 15e-6, 1e-3);
  CHECK(fit.fit.converged);
  CHECK(fit.fit.parameters.at("delta_t") ==
        doctest::Approx(0.165e-6).epsilon(1e-6));
  CHECK(fit.fit.parameters.at("p0") == doctest::Approx(0.98).epsilon(1e-8));
  CHECK(fit.model.delta_t_per_cycle == fit.fit.parameters.at("delta_t"));
}

TEST_CASE("survival fit covers the truth at 3 sigma on noisy data") {
  const SurvivalModel truth{0.98, 15e-6, 0.165e-6, 1e-3};
  int covered = 0;
  for (int rep = 0; rep < 100; ++rep) {
    rng::RandomStream rs(777, rep);
    std::vector<SurvivalPoint> pts;
    for (int i = 0; i < 20; ++i) {
      const double n = 50.0 * (i + 1);
      pts.push_back({n, binomial_draw(rs, survival_prob(truth, n), 200), 200});
    }
    const auto fit = fit_survival(pts, 15e-6, 1e-3);
    if (fit.fit.converged &&
        std::abs(fit.fit.parameters.at("delta_t") - 0.165e-6) <=
            3.0 * fit.fit.sigmas.at("delta_t"))
      ++covered;
  }
  CHECK(covered >= 95);
}

TEST_CASE("survival fit recovers the inter-site heating rate") {
  const SurvivalModel truth{0.98, 15e-6, 0.783e-6, 1e-3};
  rng::RandomStream rs(31, 0);
  std::vector<SurvivalPoint> pts;
  for (int i = 0; i < 15; ++i) {
    const double n = 30.0 * (i + 1);
    pts.push_back({n, binomial_draw(rs, survival_prob(truth, n), 200), 200});
  }
  const auto fit = fit_survival(pts, 15e-6, 1e-3);
  CHECK(fit.fit.converged);
  CHECK(std::abs(fit.fit.parameters.at("delta_t") - 0.783e-6) <=
        3.0 * fit.fit.sigmas.at("delta_t"));
}

TEST_CASE("survival fit input validation") {
  const SurvivalModel truth{0.98, 15e-6, 0.165e-6, 1e-3};
  auto pts = survival_curve(truth, 3, 50.0);
  CHECK_THROWS_AS(fit_survival(pts, 15e-6, 1e-3), std::invalid_argument);
  pts = survival_curve(truth, 5, 50.0);
  pts[1].n = pts[0].n;
  CHECK_THROWS_AS(fit_survival(pts, 15e-6, 1e-3), std::invalid_argument);
}

TEST_CASE("power-law fit round trips without noise") {
  const double a_true = 0.627 * std::pow(100.0, 8.0);
  const PowerLawContext ctx{51, 15e-6, 1e-3, 0.98};
  std::vector<TimedSurvivalPoint> pts;
  for (double t : {60., 70., 80., 90., 100., 120., 150., 200.}) {
    const double dt_uK = a_true * std::pow(t, -8.0);
    pts.push_back({t, 0.98 - truncation_tail((15.0 + 51.0 * dt_uK) / 1000.0), 0.0});
  }
  const auto fit = fit_power_law(pts, ctx);
  CHECK(fit.converged);
  CHECK(fit.parameters.at("p") == doctest::Approx(8.0).epsilon(1e-4));
  CHECK(fit.parameters.at("A") == doctest::Approx(a_true).epsilon(1e-3));

  const auto fixed = fit_power_law_fixed_exponent(pts, ctx, 8.0);
  CHECK(fixed.converged);
  CHECK(fixed.parameters.at("p") == 8.0);
  CHECK(fixed.sigmas.at("p") == 0.0);
  CHECK(fixed.parameters.at("A") == doctest::Approx(a_true).epsilon(1e-6));
}

TEST_CASE("power-law fit lands in [7,9] on noisy data") {
  const double a_true = 0.627 * std::pow(100.0, 8.0);
  const PowerLawContext ctx{51, 15e-6, 1e-3, 0.98};
  std::vector<TimedSurvivalPoint> clean;
  for (double t : {60., 70., 80., 90., 100., 120., 150., 200.}) {
    const double dt_uK = a_true * std::pow(t, -8.0);
    clean.push_back(
        {t, 0.98 - truncation_tail((15.0 + 51.0 * dt_uK) / 1000.0), 0.0});
  }
  int in_range = 0;
  for (int rep = 0; rep < 100; ++rep) {
    rng::RandomStream rs(888, rep);
    std::vector<TimedSurvivalPoint> pts;
    for (const auto& c : clean)
      pts.push_back({c.t_us, binomial_draw(rs, c.survival, 100), 100});
    const auto fit = fit_power_law(pts, ctx);
    const double p = fit.parameters.at("p");
    if (fit.converged && p >= 7.0 && p <= 9.0) ++in_range;
  }
  CHECK(in_range >= 90);
}

TEST_CASE("power-law fit validation") {
  const PowerLawContext ctx{51, 15e-6, 1e-3, 0.98};
  std::vector<TimedSurvivalPoint> few = {{60, .5, 0}, {70, .6, 0}, {80, .7, 0}};
  CHECK_THROWS_AS(fit_power_law(few, ctx), std::invalid_argument);
  std::vector<TimedSurvivalPoint> flat = {
      {60, .5, 0}, {60, .6, 0}, {60, .7, 0}, {60, .8, 0}, {60, .9, 0}};
  CHECK_THROWS_AS(fit_power_law(flat, ctx), std::invalid_argument);
}

TEST_CASE("misalignment regression on the measured parallel heating rates") {
  const std::vector<MisalignmentPoint> pts = {
      {1657, 1.48}, {1018, 1.35}, {3653, 1.89}};
  const auto fit = fit_mis_linear(pts, kTrap, 0.156);
  CHECK(fit.converged);
  CHECK(fit.parameters.at("intercept_uK") == doctest::Approx(1.1408).epsilon(2e-4));
  CHECK(fit.parameters.at("transport_exp_uK") ==
        doctest::Approx(0.9848).epsilon(2e-4));
  CHECK(fit.parameters.at("transport_exp_uK") ==
        doctest::Approx(1.01).epsilon(0.15 / 1.01));
  // slope and alpha tie together through m w0^2 / 2kB
  const double slope_si = fit.parameters.at("slope_uK_nm2") * 1e12;
  const double alpha = fit.parameters.at("alpha");
  CHECK(slope_si ==
        doctest::Approx(0.5 * alpha * kTrap.mass() * kOmega0 * kOmega0 /
                        phys::kBoltzmann)
            .epsilon(1e-12));
}

TEST_CASE("misalignment regression is exact on a line") {
  std::vector<MisalignmentPoint> pts;
  for (double x : {500.0, 1200.0, 2200.0, 4100.0})
    pts.push_back({x, 0.75 + 3.5e-4 * x});
  const auto fit = fit_mis_linear(pts, kTrap, 0.156);
  CHECK(fit.parameters.at("slope_uK_nm2") == doctest::Approx(3.5e-4).epsilon(1e-12));
  CHECK(fit.parameters.at("intercept_uK") == doctest::Approx(0.75).epsilon(1e-12));
  CHECK(fit.sigmas.at("intercept_uK") == doctest::Approx(0.0).scale(1e-6));
  std::vector<MisalignmentPoint> two = {{1.0, 1.0}, {2.0, 2.0}};
  CHECK_THROWS_AS(fit_mis_linear(two, kTrap, 0.156), std::invalid_argument);
}

TEST_CASE("2d gaussian fit recovers a noiseless center exactly") {
  const double cx = 88.8984, cy = 93.1187;
  CalibrationScan scan;
  for (int ix = -4; ix <= 4; ++ix)
    for (int iy = -4; iy <= 4; ++iy) {
      const double fx = 88.90 + 0.01 * ix, fy = 93.12 + 0.01 * iy;
      const double ux = (fx - cx) / 0.020, uy = (fy - cy) / 0.024;
      scan.grid.push_back(
          {fx, fy, 0.45 + 0.5 * std::exp(-0.5 * (ux * ux + uy * uy)), 0});
    }
  const auto fit = fit_gaussian2d(scan);
  CHECK(fit.converged);
  CHECK(scan.fitted);
  CHECK(scan.center_fx_mhz == doctest::Approx(cx).epsilon(1e-7));
  CHECK(scan.center_fy_mhz == doctest::Approx(cy).epsilon(1e-7));
  CHECK(std::abs(scan.center_fx_mhz - cx) < 1e-4);
  CHECK(scan.width_fx_mhz == doctest::Approx(0.020).epsilon(1e-5));
  CHECK(scan.width_fy_mhz == doctest::Approx(0.024).epsilon(1e-5));
  // center within the scanned rectangle
  CHECK(scan.center_fx_mhz >= 88.86);
  CHECK(scan.center_fx_mhz <= 88.94);
}

TEST_CASE("2d gaussian fit under binomial noise stays within 3 mHz") {
  const double cx = 88.8984, cy = 93.1187;
  CalibrationScan clean;
  for (int ix = -4; ix <= 4; ++ix)
    for (int iy = -4; iy <= 4; ++iy) {
      const double fx = 88.90 + 0.01 * ix, fy = 93.12 + 0.01 * iy;
      const double ux = (fx - cx) / 0.020, uy = (fy - cy) / 0.024;
      clean.grid.push_back(
          {fx, fy, 0.45 + 0.5 * std::exp(-0.5 * (ux * ux + uy * uy)), 0});
    }
  int good = 0;
  for (int rep = 0; rep < 25; ++rep) {
    rng::RandomStream rs(999, rep);
    CalibrationScan noisy;
    for (const auto& g : clean.grid)
      noisy.grid.push_back(
          {g.fx_mhz, g.fy_mhz, binomial_draw(rs, g.survival, 100), 100});
    const auto fit = fit_gaussian2d(noisy);
    if (fit.converged && std::abs(noisy.center_fx_mhz - cx) < 0.003 &&
        std::abs(noisy.center_fy_mhz - cy) < 0.003)
      ++good;
  }
  CHECK(good >= 24);
}

TEST_CASE("a peak on the scan edge raises the boundary warning") {
  // center placed outside the scanned rectangle
  const double cx = 88.955, cy = 93.12;
  CalibrationScan scan;
  for (int ix = -4; ix <= 4; ++ix)
    for (int iy = -4; iy <= 4; ++iy) {
      const double fx = 88.90 + 0.01 * ix, fy = 93.12 + 0.01 * iy;
      const double ux = (fx - cx) / 0.02, uy = (fy - cy) / 0.02;
      scan.grid.push_back(
          {fx, fy, 0.4 + 0.5 * std::exp(-0.5 * (ux * ux + uy * uy)), 0});
    }
  const auto fit = fit_gaussian2d(scan);
  bool warned = false;
  for (const auto& note : fit.notes)
    warned = warned || note == "maximum-on-grid-boundary" ||
             note == "fitted-center-outside-scan";
  CHECK(warned);
}

TEST_CASE("noisy fits cover the truth at 3 sigma") {
  // power law
  {
    const double a_true = 0.627 * std::pow(100.0, 8.0);
    const PowerLawContext ctx{51, 15e-6, 1e-3, 0.98};
    std::vector<TimedSurvivalPoint> clean;
    for (double t : {60., 70., 80., 90., 100., 120., 150., 200.}) {
      const double dt_uK = a_true * std::pow(t, -8.0);
      clean.push_back(
          {t, 0.98 - truncation_tail((15.0 + 51.0 * dt_uK) / 1000.0), 0.0});
    }
    int covered = 0;
    for (int rep = 0; rep < 100; ++rep) {
      rng::RandomStream rs(555, rep);
      std::vector<TimedSurvivalPoint> pts;
      for (const auto& c : clean)
        pts.push_back({c.t_us, binomial_draw(rs, c.survival, 100), 100});
      const auto fit = fit_power_law(pts, ctx);
      if (fit.converged &&
          std::abs(fit.parameters.at("p") - 8.0) <= 3.0 * fit.sigmas.at("p"))
        ++covered;
    }
    CHECK(covered >= 95);
  }
  // gaussian center
  {
    const double cx = 88.8984, cy = 93.1187;
    std::vector<ScanPoint> clean;
    for (int ix = -4; ix <= 4; ++ix)
      for (int iy = -4; iy <= 4; ++iy) {
        const double fx = 88.90 + 0.01 * ix, fy = 93.12 + 0.01 * iy;
        const double ux = (fx - cx) / 0.020, uy = (fy - cy) / 0.024;
        clean.push_back(
            {fx, fy, 0.45 + 0.5 * std::exp(-0.5 * (ux * ux + uy * uy)), 0});
      }
    int covered = 0;
    for (int rep = 0; rep < 100; ++rep) {
      rng::RandomStream rs(556, rep);
      CalibrationScan scan;
      for (const auto& g : clean)
        scan.grid.push_back(
            {g.fx_mhz, g.fy_mhz, binomial_draw(rs, g.survival, 100), 100});
      const auto fit = fit_gaussian2d(scan);
      if (fit.converged && std::abs(scan.center_fx_mhz - cx) <=
                               3.0 * fit.sigmas.at("cx_mhz"))
        ++covered;
    }
    CHECK(covered >= 95);
  }
  // fidelity decay
  {
    int covered = 0;
    for (int rep = 0; rep < 100; ++rep) {
      rng::RandomStream rs(557, rep);
      std::vector<FidelityPoint> pts;
      for (int n = 0; n <= 300; n += 30) {
        const double truth = 0.88 * std::pow(0.99992, n);
        pts.push_back({double(n), truth + 0.01 * rs.normal(), 0.01});
      }
      const auto fit = fit_fidelity_decay(pts);
      if (fit.converged &&
          std::abs(fit.parameters.at("per_cycle_fidelity") - 0.99992) <=
              3.0 * fit.sigmas.at("per_cycle_fidelity"))
        ++covered;
    }
    CHECK(covered >= 95);
  }
}

TEST_CASE("flat scans do not invent a peak") {
  CalibrationScan scan;
  for (int ix = 0; ix < 5; ++ix)
    for (int iy = 0; iy < 5; ++iy)
      scan.grid.push_back({88.90 + 0.01 * ix, 93.12 + 0.01 * iy, 0.8, 0});
  const auto fit = fit_gaussian2d(scan);
  CHECK((!fit.converged || std::abs(fit.parameters.at("amplitude")) < 1e-6));
}

TEST_CASE("2d gaussian fit validation") {
  CalibrationScan tiny;
  for (int i = 0; i < 9; ++i)
    tiny.grid.push_back({88.9 + 0.01 * (i % 3), 93.1 + 0.01 * (i / 3), 0.5, 0});
  CHECK_THROWS_AS(fit_gaussian2d(tiny), std::invalid_argument);
  CalibrationScan bad;
  for (int ix = 0; ix < 5; ++ix)
    for (int iy = 0; iy < 5; ++iy)
      bad.grid.push_back({88.9 + 0.01 * ix, 93.1 + 0.01 * iy, 1.5, 0});
  CHECK_THROWS_AS(fit_gaussian2d(bad), std::domain_error);
}

TEST_CASE("fidelity decay fits recover per-cycle rates close to one") {
  for (double f_true : {0.99992, 0.9998}) {
    std::vector<FidelityPoint> pts;
    for (int n = 0; n <= 300; n += 50)
      pts.push_back({double(n), 0.88 * std::pow(f_true, n), 0.0});
    const auto fit = fit_fidelity_decay(pts);
    CHECK(fit.converged);
    CHECK(fit.parameters.at("per_cycle_fidelity") ==
          doctest::Approx(f_true).epsilon(1e-6));
    CHECK(fit.parameters.at("f0") == doctest::Approx(0.88).epsilon(1e-6));
  }
}

TEST_CASE("constant fidelity means per-cycle fidelity one") {
  std::vector<FidelityPoint> pts = {{0, 0.9, 0.01}, {100, 0.9, 0.01},
                                    {200, 0.9, 0.01}};
  const auto fit = fit_fidelity_decay(pts);
  CHECK(fit.parameters.at("per_cycle_fidelity") == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("fidelity fit validation") {
  std::vector<FidelityPoint> neg = {{0, 0.9, 0}, {50, -0.1, 0}, {100, 0.5, 0}};
  CHECK_THROWS_AS(fit_fidelity_decay(neg), std::domain_error);
  std::vector<FidelityPoint> two = {{0, 0.9, 0}, {50, 0.8, 0}};
  CHECK_THROWS_AS(fit_fidelity_decay(two), std::invalid_argument);
}

TEST_CASE("frequency-to-position conversion") {
  CHECK(freq_to_position(1.615) == doctest::Approx(5.6).epsilon(1e-12));
  CHECK(freq_to_position(0.288) == doctest::Approx(1.0).epsilon(2e-3));
  CHECK(freq_to_position(0.0) == 0.0);
  CHECK(freq_to_position(-1.615) == doctest::Approx(-5.6).epsilon(1e-12));
}

TEST_CASE("mismatch combination on the calibration table") {
  CHECK(combine_mismatch(19, 36) == 1657.0);
  CHECK(combine_mismatch(17, 27) == 1018.0);
  CHECK(combine_mismatch(38, 47) == 3653.0);
  CHECK(combine_mismatch(0, 0) == 0.0);
  // symmetric and homogeneous of degree 2
  CHECK(combine_mismatch(19, 36) == combine_mismatch(36, 19));
  CHECK(combine_mismatch(2 * 19, 2 * 36) == 4.0 * combine_mismatch(19, 36));
  CHECK_THROWS_AS(combine_mismatch(-1, 5), std::domain_error);
}

TEST_CASE("first-order mismatch uncertainties agree with the quoted values") {
  CHECK(combine_mismatch_sigma(19, 3, 36, 3) == doctest::Approx(244).epsilon(0.5 / 244));
  CHECK(combine_mismatch_sigma(17, 2, 27, 3) == doctest::Approx(176).epsilon(0.5 / 176));
  CHECK(combine_mismatch_sigma(38, 3, 47, 3) == doctest::Approx(363).epsilon(0.5 / 363));
  CHECK(combine_mismatch_sigma(19, 0, 36, 0) == 0.0);
}

TEST_SUITE_END();

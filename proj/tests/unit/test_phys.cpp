#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "shuttle/constants.hpp"
#include "shuttle/trap.hpp"

using namespace shuttle;
using phys::ThermalState;
using phys::TrapConfig;

namespace {

// Independent inversion of the ground-state fraction by bisection, used as
// the oracle for the closed-form calibration.
double calibrate_omega_bisect(double temperature, double fraction) {
  double lo = 1.0, hi = 1e12;
  for (int i = 0; i < 200; ++i) {
    const double mid = std::sqrt(lo * hi);
    const double f =
        phys::gs_fraction_2d({temperature}, TrapConfig(mid, 1e-3, phys::kMassRb87));
    (f < fraction ? lo : hi) = mid;
  }
  return std::sqrt(lo * hi);
}

}  // namespace

TEST_SUITE_BEGIN("phys");

TEST_CASE("zero point length of a 100 kHz Rb87 trap") {
  TrapConfig trap(2.0 * M_PI * 1e5, 1e-3, phys::kMassRb87);
  const double expected =
      std::sqrt(phys::kHbar / (2.0 * phys::kMassRb87 * 2.0 * M_PI * 1e5));
  CHECK(phys::zero_point_length(trap) == doctest::Approx(expected).epsilon(1e-14));
  CHECK(phys::zero_point_length(trap) == doctest::Approx(2.41148e-8).epsilon(1e-4));
}

TEST_CASE("zero point length scales as inverse square roots") {
  TrapConfig base(8e5, 1e-3, phys::kMassRb87);
  TrapConfig w4(4 * 8e5, 1e-3, phys::kMassRb87);
  TrapConfig m4(8e5, 1e-3, 4 * phys::kMassRb87);
  CHECK(phys::zero_point_length(w4) ==
        doctest::Approx(0.5 * phys::zero_point_length(base)).epsilon(1e-14));
  CHECK(phys::zero_point_length(m4) ==
        doctest::Approx(0.5 * phys::zero_point_length(base)).epsilon(1e-14));
}

TEST_CASE("trap validation") {
  CHECK_THROWS_AS(TrapConfig(0.0, 1e-3, phys::kMassRb87), std::invalid_argument);
  CHECK_THROWS_AS(TrapConfig(8e5, -1.0, phys::kMassRb87), std::invalid_argument);
  CHECK_THROWS_AS(TrapConfig(8e5, 1e-3, 0.0), std::invalid_argument);
}

TEST_CASE("ground state fraction limits") {
  TrapConfig trap(8.78e5, 1e-3, phys::kMassRb87);
  CHECK(phys::gs_fraction_2d({0.0}, trap) == 1.0);
  CHECK(phys::gs_fraction_2d({10.0}, trap) < 1e-6);  // hot limit
  CHECK_THROWS_AS(phys::gs_fraction_2d({-1e-6}, trap), std::domain_error);
}

TEST_CASE("omega calibration hits the 15 uK / 13 percent operating point") {
  const double w0 = phys::calibrate_omega(15e-6, 0.130);
  CHECK(w0 * phys::kHbar / phys::kBoltzmann ==
        doctest::Approx(6.7073e-6).epsilon(1e-4));
  TrapConfig trap(w0, 1e-3, phys::kMassRb87);
  CHECK(phys::gs_fraction_2d({15e-6}, trap) == doctest::Approx(0.130).epsilon(1e-12));

  // Heating by one exchange cycle shifts the fraction down by ~0.2 %.
  const double heated = phys::gs_fraction_2d({15.156e-6}, trap);
  CHECK(heated == doctest::Approx(0.127881).epsilon(2e-4));
  CHECK(0.130 - heated == doctest::Approx(0.002).epsilon(0.08));
}

TEST_CASE("omega calibration matches the bisection oracle") {
  for (double f : {0.05, 0.13, 0.4, 0.9}) {
    const double closed = phys::calibrate_omega(15e-6, f);
    const double bisect = calibrate_omega_bisect(15e-6, f);
    CHECK(closed == doctest::Approx(bisect).epsilon(1e-9));
  }
}

TEST_CASE("calibration round trips and scaling") {
  for (double w0 : {3e5, 8.78e5, 5e6}) {
    TrapConfig trap(w0, 1e-3, phys::kMassRb87);
    const double f = phys::gs_fraction_2d({12e-6}, trap);
    CHECK(phys::calibrate_omega(12e-6, f) == doctest::Approx(w0).epsilon(1e-10));
  }
  // Doubling T at fixed fraction doubles omega.
  CHECK(phys::calibrate_omega(30e-6, 0.13) ==
        doctest::Approx(2.0 * phys::calibrate_omega(15e-6, 0.13)).epsilon(1e-12));
  CHECK_THROWS_AS(phys::calibrate_omega(15e-6, 0.0), std::domain_error);
  CHECK_THROWS_AS(phys::calibrate_omega(15e-6, 1.0), std::domain_error);
  CHECK_THROWS_AS(phys::calibrate_omega(0.0, 0.5), std::domain_error);
}

TEST_CASE("fraction is monotone in T and omega") {
  double prev = 1.0;
  for (int i = 1; i <= 40; ++i) {
    TrapConfig trap(8.78e5, 1e-3, phys::kMassRb87);
    const double f = phys::gs_fraction_2d({i * 1e-6}, trap);
    CHECK(f < prev);
    prev = f;
  }
  prev = 0.0;
  for (int i = 1; i <= 40; ++i) {
    TrapConfig trap(i * 1e5, 1e-3, phys::kMassRb87);
    const double f = phys::gs_fraction_2d({15e-6}, trap);
    CHECK(f > prev);
    prev = f;
  }
}

TEST_SUITE_END();

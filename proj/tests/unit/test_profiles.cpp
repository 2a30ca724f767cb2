#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <vector>

#include "shuttle/profile.hpp"

using namespace shuttle::traj;

TEST_SUITE_BEGIN("trajectories");

TEST_CASE("smoothstep coefficient tables") {
  const auto k0 = smoothstep_profile(0).coefficients();
  CHECK(k0 == std::vector<double>{0, 1});

  const auto k1 = smoothstep_profile(1).coefficients();
  CHECK(k1 == std::vector<double>{0, 0, 3, -2});

  const auto k3 = smoothstep_profile(3).coefficients();
  CHECK(k3 == std::vector<double>{0, 0, 0, 0, 35, -84, 70, -20});

  CHECK_THROWS_AS(smoothstep_profile(-1), std::invalid_argument);
  CHECK_THROWS_AS(smoothstep_profile(17), std::invalid_argument);
}

TEST_CASE("sinusoidal boundary values") {
  const auto p = sinusoidal_profile();
  CHECK(p.eval(0.0) == doctest::Approx(0.0).epsilon(1e-15));
  CHECK(p.eval(1.0) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(p.eval(0.5) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(std::abs(p.eval(0.0, 1)) < 1e-14);
  CHECK(std::abs(p.eval(1.0, 1)) < 1e-14);
}

TEST_CASE("endpoint derivatives vanish through order k") {
  for (int k = 1; k <= 6; ++k) {
    const auto p = smoothstep_profile(k);
    for (int d = 1; d <= k; ++d) {
      CHECK(p.eval(0.0, d) == 0.0);
      CHECK(p.eval(1.0, d) == 0.0);
    }
    // order k+1 must not vanish, otherwise the polynomial would be higher order
    CHECK(std::abs(p.eval(0.0, k + 1)) > 0.0);
  }
}

TEST_CASE("finite differences confirm the endpoint flatness") {
  // With k vanishing derivatives the value changes only at O(h^(k+1)).
  const double h = 1e-7;
  for (int k : {1, 3, 5}) {
    const auto p = smoothstep_profile(k);
    CHECK(std::abs(p.eval(h) - p.eval(0.0)) < 1e-12);
    CHECK(std::abs(p.eval(1.0) - p.eval(1.0 - h)) < 1e-12);
  }
}

TEST_CASE("symmetry profile(s) + profile(1-s) == 1") {
  for (const auto& p :
       {smoothstep_profile(1), smoothstep_profile(3), smoothstep_profile(5),
        sinusoidal_profile()}) {
    for (int i = 0; i <= 64; ++i) {
      const double s = i / 64.0;
      CHECK(p.eval(s) + p.eval(1.0 - s) == doctest::Approx(1.0).epsilon(1e-13));
    }
  }
}

TEST_CASE("profiles are nondecreasing") {
  for (const auto& p :
       {smoothstep_profile(0), smoothstep_profile(3), sinusoidal_profile()}) {
    double prev = -1e-12;
    for (int i = 0; i <= 200; ++i) {
      const double v = p.eval(i / 200.0);
      CHECK(v >= prev - 1e-13);
      prev = v;
    }
  }
}

TEST_CASE("analytic derivatives match central finite differences") {
  const double h = 1e-6;
  for (const auto& p : {smoothstep_profile(1), smoothstep_profile(3),
                        smoothstep_profile(4), sinusoidal_profile()}) {
    for (int d = 1; d <= 3; ++d) {
      double scale = 0.0;
      for (int i = 1; i < 100; ++i)
        scale = std::max(scale, std::abs(p.eval(i / 100.0, d)));
      for (int i = 1; i < 100; ++i) {
        const double s = i / 100.0;
        const double fd = (p.eval(s + h, d - 1) - p.eval(s - h, d - 1)) / (2 * h);
        const double an = p.eval(s, d);
        CHECK(std::abs(fd - an) <= 1e-6 * (scale + std::abs(an)));
      }
    }
  }
}

TEST_CASE("known point values") {
  const auto k3 = smoothstep_profile(3);
  CHECK(k3.eval(0.5) == doctest::Approx(0.5).epsilon(1e-15));
  const auto k1 = smoothstep_profile(1);
  CHECK(k1.eval(0.5, 2) == doctest::Approx(0.0).epsilon(1e-12));  // 6 - 12 s
  CHECK(k1.eval(0.25) == doctest::Approx(3 * 0.0625 - 2 * 0.015625).epsilon(1e-15));
}

TEST_CASE("eval argument validation") {
  const auto p = smoothstep_profile(3);
  CHECK_THROWS_AS(p.eval(-0.01), std::domain_error);
  CHECK_THROWS_AS(p.eval(1.01), std::domain_error);
  CHECK_THROWS_AS(p.eval(0.5, -1), std::domain_error);
}

TEST_CASE("profile names parse back") {
  for (const char* name : {"smoothstep:0", "smoothstep:3", "sinusoidal"}) {
    CHECK(MotionProfile::parse(name).name() == name);
  }
  CHECK_THROWS_AS(MotionProfile::parse("cubic"), std::invalid_argument);
  CHECK_THROWS_AS(MotionProfile::parse("smoothstep:x"), std::invalid_argument);
  CHECK_THROWS_AS(MotionProfile::parse("smoothstep:3x"), std::invalid_argument);
}

TEST_CASE("plans scale the profile to physical units") {
  const auto plan = make_plan(smoothstep_profile(3), 5.6e-6, 100e-6);
  CHECK(plan.position(0.0) == 0.0);
  CHECK(plan.position(100e-6) == doctest::Approx(5.6e-6).epsilon(1e-15));
  CHECK(plan.position(50e-6) == doctest::Approx(2.8e-6).epsilon(1e-13));
  CHECK(plan.velocity(0.0) == 0.0);
  CHECK(plan.velocity(100e-6) == doctest::Approx(0.0).scale(1.0));
  // acceleration midway: (D/T^2) * lambda''(1/2) and lambda'' is odd about 1/2
  CHECK(plan.acceleration(50e-6) == doctest::Approx(0.0).scale(1.0));

  const auto zero = make_plan(sinusoidal_profile(), 0.0, 10e-6);
  CHECK(zero.position(5e-6) == 0.0);
  CHECK(zero.acceleration(5e-6) == 0.0);

  CHECK_THROWS_AS(make_plan(smoothstep_profile(1), 1e-6, 0.0), std::domain_error);
  CHECK_THROWS_AS(make_plan(smoothstep_profile(1), -1e-6, 1e-6), std::domain_error);
}

TEST_SUITE_END();

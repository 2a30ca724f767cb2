#include <doctest.h>

#include <cmath>

#include "shuttle/rng.hpp"

using namespace shuttle::rng;

TEST_SUITE_BEGIN("oracle");

TEST_CASE("philox4x32-10 known-answer vectors") {
  // Reference vectors from the Random123 distribution.
  const auto zero = philox4x32({0, 0, 0, 0}, {0, 0});
  CHECK(zero[0] == 0x6627e8d5u);
  CHECK(zero[1] == 0xe169c58du);
  CHECK(zero[2] == 0xbc57ac4cu);
  CHECK(zero[3] == 0x9b00dbd8u);

  const auto ones = philox4x32({0xffffffffu, 0xffffffffu, 0xffffffffu, 0xffffffffu},
                               {0xffffffffu, 0xffffffffu});
  CHECK(ones[0] == 0x408f276du);
  CHECK(ones[1] == 0x41c83b0eu);
  CHECK(ones[2] == 0xa20bc7c6u);
  CHECK(ones[3] == 0x6d5451fdu);

  const auto pi = philox4x32({0x243f6a88u, 0x85a308d3u, 0x13198a2eu, 0x03707344u},
                             {0xa4093822u, 0x299f31d0u});
  CHECK(pi[0] == 0xd16cfe09u);
  CHECK(pi[1] == 0x94fdccebu);
  CHECK(pi[2] == 0x5001e420u);
  CHECK(pi[3] == 0x24126ea1u);
}

TEST_CASE("streams are reproducible and distinct") {
  RandomStream a(42, 7), b(42, 7), c(42, 8), d(43, 7);
  bool all_equal_c = true, all_equal_d = true;
  for (int i = 0; i < 64; ++i) {
    const auto va = a.next_u64();
    CHECK(va == b.next_u64());
    all_equal_c = all_equal_c && va == c.next_u64();
    all_equal_d = all_equal_d && va == d.next_u64();
  }
  CHECK_FALSE(all_equal_c);
  CHECK_FALSE(all_equal_d);
}

TEST_CASE("uniform draws stay in range") {
  RandomStream s(1, 0);
  for (int i = 0; i < 10000; ++i) {
    const double u = s.uniform01();
    CHECK(u >= 0.0);
    CHECK(u < 1.0);
    const double v = s.uniform_pos();
    CHECK(v > 0.0);
    CHECK(v <= 1.0);
  }
}

TEST_CASE("normal moments") {
  RandomStream s(5, 0);
  const int n = 200000;
  double sum = 0, sum_sq = 0;
  for (int i = 0; i < n; ++i) {
    const double z = s.normal();
    sum += z;
    sum_sq += z * z;
  }
  const double mean = sum / n;
  const double var = sum_sq / n - mean * mean;
  CHECK(std::abs(mean) < 4.0 / std::sqrt(double(n)));
  CHECK(var == doctest::Approx(1.0).epsilon(0.02));
}

TEST_CASE("erlang3 tail matches the closed-form truncation probability") {
  // P(X > x) = (1 + x + x^2/2) exp(-x) for the sum of three exponentials;
  // this is exactly the survival-law tail.
  RandomStream s(9, 0);
  const int n = 200000;
  const double threshold = 5.0;
  int above = 0;
  double sum = 0;
  for (int i = 0; i < n; ++i) {
    const double x = s.erlang3();
    sum += x;
    above += x > threshold;
  }
  CHECK(sum / n == doctest::Approx(3.0).epsilon(0.01));
  const double p = (1.0 + threshold + 0.5 * threshold * threshold) *
                   std::exp(-threshold);
  const double sigma = std::sqrt(p * (1 - p) / n);
  CHECK(std::abs(double(above) / n - p) < 3.5 * sigma);
}

TEST_SUITE_END();

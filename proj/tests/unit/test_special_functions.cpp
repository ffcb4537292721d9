#include <doctest.h>

#include <cmath>
#include <limits>
#include <stdexcept>

#include "maxbandit/special_functions.hpp"
#include "numeric_oracles.hpp"

using namespace maxbandit;

TEST_CASE("erfc matches the extended-precision oracle") {
  for (double x = -6.0; x <= 26.0; x += 0.0625) {
    const double ref = static_cast<double>(oracle::hp_erfc(x));
    CHECK(maxbandit::erfc(x) == doctest::Approx(ref).epsilon(1e-13));
  }
  CHECK(maxbandit::erfc(0.0) == 1.0);
  CHECK(maxbandit::erfc(-40.0) == 2.0);
}

TEST_CASE("normal tail and density") {
  CHECK(normal_pdf(0.0) == doctest::Approx(0.3989422804014327).epsilon(1e-15));
  CHECK(normal_upper_tail(0.0) == doctest::Approx(0.5));
  CHECK(normal_upper_tail(1.959963984540054) == doctest::Approx(0.025).epsilon(1e-12));
  for (double z = -5.0; z <= 30.0; z += 0.25) {
    const long double tail = 0.5L * oracle::hp_erfc(z / std::sqrt(2.0L));
    const long double pdf = std::exp(-0.5L * z * z) / std::sqrt(2.0L * 3.14159265358979323846L);
    CHECK(mills_ratio(z) == doctest::Approx(static_cast<double>(tail / pdf)).epsilon(1e-12));
  }
}

TEST_CASE("mills ratio stays finite where the tail underflows") {
  const double z = 60.0;
  CHECK(std::isfinite(mills_ratio(z)));
  CHECK(mills_ratio(z) == doctest::Approx(1.0 / z * (1.0 - 1.0 / (z * z))).epsilon(1e-6));
}

TEST_CASE("gaussian EI equals the survival integral") {
  for (double mu : {-2.0, 0.0, 3.5}) {
    for (double sd : {0.1, 1.0, 4.0}) {
      for (double r0 : {-10.0, -1.0, 0.0, 2.0, 8.0}) {
        const double ref = static_cast<double>(oracle::survival_integral(mu, sd, r0));
        CHECK(gaussian_expected_improvement(mu, sd, r0) == doctest::Approx(ref).epsilon(1e-11));
      }
    }
  }
  CHECK(gaussian_expected_improvement(0.0, 1.0, 0.0) == doctest::Approx(0.3989422804014327));
}

TEST_CASE("gaussian EI limits") {
  CHECK(gaussian_expected_improvement(0.0, 1.0, 60.0) >= 0.0);
  CHECK(gaussian_expected_improvement(0.0, 1.0, 60.0) < 1e-300);
  // Incumbent far below the mean: EI is the mean gap.
  CHECK(gaussian_expected_improvement(1.0, 0.5, 1.0 - 10 * 0.5) == doctest::Approx(5.0).epsilon(1e-9));
  CHECK_THROWS_AS(gaussian_expected_improvement(0.0, 0.0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(gaussian_expected_improvement(0.0, -1.0, 1.0), std::invalid_argument);
}

TEST_CASE("log EI agrees with log of EI and keeps ordering in the far tail") {
  for (double r0 = -5.0; r0 <= 30.0; r0 += 0.5) {
    const double ei = gaussian_expected_improvement(0.0, 1.0, r0);
    if (ei > 1e-300) {
      CHECK(log_gaussian_expected_improvement(0.0, 1.0, r0) == doctest::Approx(std::log(ei)).epsilon(1e-10));
    }
  }
  // Where EI underflows, the wider arm still wins.
  const double a = log_gaussian_expected_improvement(0.0, 1.0, 100.0);
  const double b = log_gaussian_expected_improvement(-6.0, std::sqrt(3.0), 100.0);
  CHECK(std::isfinite(a));
  CHECK(std::isfinite(b));
  CHECK(b > a);
  double prev = log_gaussian_expected_improvement(0.0, 1.0, 0.0);
  for (double r0 = 1.0; r0 < 200.0; r0 += 1.0) {
    const double v = log_gaussian_expected_improvement(0.0, 1.0, r0);
    CHECK(v < prev);
    prev = v;
  }
}

#include "maxbandit/special_functions.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace maxbandit {
namespace {

constexpr double kTailSwitch = 5.0;
constexpr int kContinuedFractionTerms = 400;

// Tail of the Mills-ratio continued fraction
//   R(z) = 1/(z + 1/(z + 2/(z + 3/(z + ...))))
// returns t with R(z) = 1/(z + t). Valid for z >= kTailSwitch.
double mills_tail(double z) {
  double t = 0.0;
  for (int k = kContinuedFractionTerms; k >= 2; --k) {
    t = k / (z + t);
  }
  return 1.0 / (z + t);
}

}  // namespace

double erfc(double x) { return std::erfc(x); }

double normal_pdf(double z) {
  return std::exp(-0.5 * z * z) / std::sqrt(2.0 * std::numbers::pi);
}

double normal_upper_tail(double z) { return 0.5 * std::erfc(z / std::numbers::sqrt2); }

double mills_ratio(double z) {
  if (z < kTailSwitch) {
    return normal_upper_tail(z) / normal_pdf(z);
  }
  return 1.0 / (z + mills_tail(z));
}

double gaussian_expected_improvement(double mean, double stddev, double incumbent) {
  if (!(stddev > 0.0)) {
    throw std::invalid_argument("gaussian_expected_improvement: stddev must be positive");
  }
  if (incumbent == std::numeric_limits<double>::infinity()) {
    return 0.0;
  }
  const double z = (incumbent - mean) / stddev;
  if (z <= 0.0) {
    // Both terms are non-negative here.
    const double gap = mean - incumbent;
    return gap * normal_upper_tail(z) + stddev * normal_pdf(z);
  }
  if (z < kTailSwitch) {
    return stddev * (normal_pdf(z) - z * normal_upper_tail(z));
  }
  // 1 - z R(z) = t R(z) with R = 1/(z + t); avoids the cancellation.
  const double t = mills_tail(z);
  const double r = 1.0 / (z + t);
  return stddev * normal_pdf(z) * t * r;
}

double log_gaussian_expected_improvement(double mean, double stddev, double incumbent) {
  if (!(stddev > 0.0)) {
    throw std::invalid_argument("log_gaussian_expected_improvement: stddev must be positive");
  }
  const double z = (incumbent - mean) / stddev;
  if (z < kTailSwitch) {
    return std::log(gaussian_expected_improvement(mean, stddev, incumbent));
  }
  const double t = mills_tail(z);
  const double r = 1.0 / (z + t);
  const double log_pdf = -0.5 * z * z - 0.5 * std::log(2.0 * std::numbers::pi);
  return std::log(stddev) + log_pdf + std::log(t) + std::log(r);
}

}  // namespace maxbandit

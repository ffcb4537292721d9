#pragma once

namespace maxbandit {

/// Complementary error function, erfc(x) = 1 - erf(x).
double erfc(double x);

/// Standard normal density.
double normal_pdf(double z);

/// Standard normal upper tail P[Z > z].
double normal_upper_tail(double z);

/// Mills ratio P[Z > z] / phi(z). Accurate for all finite z; uses a
/// continued fraction in the far tail where both factors underflow.
double mills_ratio(double z);

/// Expected improvement of a Gaussian N(mean, stddev^2) over `incumbent`,
/// E[max(r, incumbent)] - incumbent. Requires stddev > 0.
double gaussian_expected_improvement(double mean, double stddev, double incumbent);

/// Natural log of gaussian_expected_improvement, finite far beyond the point
/// where the improvement itself underflows.
double log_gaussian_expected_improvement(double mean, double stddev, double incumbent);

}  // namespace maxbandit

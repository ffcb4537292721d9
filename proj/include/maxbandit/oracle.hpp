#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "maxbandit/policy.hpp"

namespace maxbandit {

/// Gaussian arm given by mean and variance.
struct GaussianArm {
  double mean = 0.0;
  double variance = 1.0;

  double stddev() const;
};

using GaussianArmSet = std::vector<GaussianArm>;

struct Interval {
  double lower = 0.0;
  double upper = 0.0;
};

/// E[max(r, incumbent)] - incumbent for r ~ N(mean, stddev^2).
double gaussian_ei(double mean, double stddev, double incumbent);

struct MonteCarloEstimate {
  double mean = 0.0;
  double standard_error = 0.0;
};

/// Sample estimate of gaussian_ei from `samples` draws.
MonteCarloEstimate monte_carlo_ei(double mean, double stddev, double incumbent,
                                  std::size_t samples, std::uint64_t seed);

/// Bounds on E[max of T draws] of N(mean, stddev^2):
/// mean + stddev sqrt(ln T) / sqrt(pi ln 2) and mean + sqrt(2) stddev sqrt(ln T).
/// Requires T >= 2.
Interval gaussian_max_expectation_bounds(double mean, double stddev, double horizon);
/// Same bounds from ln T, for horizons beyond the range of double.
Interval gaussian_max_expectation_bounds_log(double mean, double stddev, double log_horizon);

/// E[max of T draws] of N(mean, stddev^2) by quadrature of the exact
/// distribution of the maximum. Valid for any T >= 1 given as ln T.
double expected_gaussian_max_log(double mean, double stddev, double log_horizon);

struct SingleArmVerdict {
  /// Arm whose lower bound beats every other arm's upper bound.
  std::optional<std::size_t> certified;
  /// Arm with the largest quadrature value of E[max], reported when undetermined.
  std::optional<std::size_t> numeric_pick;
  std::vector<Interval> bounds;
  std::vector<double> expected_max;  ///< quadrature values, filled only when undetermined
};

/// Best single arm for horizon T. `log_horizon` = ln T, T >= 2.
SingleArmVerdict single_armed_oracle_log(const GaussianArmSet& arms, double log_horizon);
SingleArmVerdict single_armed_oracle(const GaussianArmSet& arms, double horizon);

/// Arm with the largest EI over `incumbent`; ties go to the lowest index. With
/// no incumbent (-inf) the arm with the largest mean is chosen.
std::size_t kikkawa_greedy_select(const GaussianArmSet& arms, double incumbent);

/// Play one arm throughout.
struct FixedArmPolicy {
  std::size_t arm = 0;
};
/// Kikkawa's greedy oracle with the true arm parameters and the observed incumbent.
struct GreedyOraclePolicy {};

using ArmPolicy = std::variant<FixedArmPolicy, GreedyOraclePolicy, PolicyConfig>;

/// Running maximum of one simulated episode. Step t draws z_t from the seed's
/// stream and pays mean_k + stddev_k z_t, so policies sharing a seed see common
/// random numbers.
std::vector<double> simulate_running_max(const ArmPolicy& policy, const GaussianArmSet& arms,
                                         std::int64_t horizon, std::uint64_t seed);

struct RegretReport {
  std::int64_t horizon = 0;
  double oracle_max = 0.0;
  double oracle_stderr = 0.0;
  double policy_max = 0.0;
  double policy_stderr = 0.0;
  double carpentier = 0.0;           ///< oracle_max - policy_max
  double carpentier_stderr = 0.0;    ///< from paired differences
  double nishihara = 0.0;            ///< smallest T' / T reaching oracle_max
  bool nishihara_exceeded = false;   ///< T' not found below cap_multiple * T
};

RegretReport carpentier_regret(const ArmPolicy& oracle, const ArmPolicy& policy,
                               const GaussianArmSet& arms, std::int64_t horizon,
                               std::size_t samples, std::uint64_t seed);

/// Also fills the Carpentier fields. The evaluated policy's mean running-max
/// curve is estimated up to cap_multiple * T; the curve is non-decreasing, so
/// the smallest T' is found by bisection on it.
RegretReport nishihara_regret(const ArmPolicy& oracle, const ArmPolicy& policy,
                              const GaussianArmSet& arms, std::int64_t horizon, std::size_t samples,
                              std::uint64_t seed, double cap_multiple = 10.0);

/// Confidence bounds on E[x] from samples of a sub-exponential x with parameter b:
/// mean - gamma_plus b and mean + gamma_minus b with beta = sqrt(-ln(alpha) / n).
Interval bernstein_bounds(std::span<const double> samples, double alpha, double b);
double bernstein_gamma_plus(double beta);
double bernstein_gamma_minus(double beta);

/// Bounds on (1/2) int_y^inf erfc(x) dx for y > 0 and beta > 1.
Interval erfc_integral_bounds(double y, double beta);

/// Natural log of the lower bound of erfc_integral_bounds, maximized over beta > 1.
double log_best_erfc_integral_lower(double y);

struct Example1Report {
  GaussianArmSet arms;
  /// Per arm, the range of ln T where its lower bound beats all other upper
  /// bounds; empty when never certified.
  std::vector<std::optional<Interval>> certified_log_horizon;
};

Example1Report example1_report();

struct Example2Report {
  GaussianArmSet arms;
  /// Incumbents where the exact EI of two arms cross: (1,2), (2,3), (1,3), 0-based pairs.
  struct Crossing {
    std::size_t first;
    std::size_t second;
    double incumbent;
  };
  std::vector<Crossing> crossings;
  /// Per arm, incumbent ranges where its EI lower bound beats every other arm's
  /// upper bound, scanned over (0, scan_limit].
  std::vector<std::vector<Interval>> certified;
  /// Greedy selections at the probe incumbents 1.3, 7.0, 11.9, 18.9.
  std::vector<std::pair<double, std::size_t>> probes;
};

Example2Report example2_report(double scan_limit = 40.0);

/// Plain-text rendering of the example reports.
std::string format_example1(const Example1Report& report);
std::string format_example2(const Example2Report& report);

}  // namespace maxbandit

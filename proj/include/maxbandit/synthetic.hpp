#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "maxbandit/policy.hpp"
#include "maxbandit/records.hpp"

namespace maxbandit {

struct GaussianArmSpec {
  double mean = 0.0;
  double stddev = 1.0;
};

struct SyntheticProblem {
  std::string name;
  std::vector<GaussianArmSpec> arms;
  std::size_t optimal_arm = 0;  ///< 0-based; best arm for the max objective at T = 10,000
};

enum class ProblemName { easy, difficult, unfavorable };

ProblemName parse_problem(std::string_view name);
std::string_view problem_name(ProblemName name);

/// The three Gaussian benchmark problems.
///   easy:        (1,1) (0,2) (-1,3), arm 3 optimal
///   difficult:   (-0.2,1.1) (0,1) (-0.8,1.2), arm 1 optimal
///   unfavorable: (1,1) (0,1) (-1,1), arm 1 optimal
SyntheticProblem make_problem(ProblemName name);

/// Per-step record of one run. `arms` holds 0-based arm indices; -1 where no arm applies.
struct RunTrajectory {
  std::vector<std::int32_t> arms;
  std::vector<double> rewards;
  std::vector<double> running_max;

  std::size_t size() const { return rewards.size(); }
  void push(std::int32_t arm, double reward);
};

/// Seed of run `index` in an experiment with master seed `master`.
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index);

/// Generator for one named stream of a seeded run.
Rng make_rng(std::uint64_t seed, std::uint64_t stream);

/// T selections of `policy` on `problem`. Bit-reproducible for a fixed seed:
/// rewards and tie-breaking draw from separate streams derived from `seed`.
RunTrajectory run_episode(const SyntheticProblem& problem, const PolicyConfig& policy,
                          std::int64_t horizon, std::uint64_t seed);

enum class Aggregation { mean_stderr, median_quantile };

std::string_view aggregation_name(Aggregation mode);
Aggregation parse_aggregation(std::string_view name);

struct TransitionSeries {
  std::vector<double> max_mean;
  std::vector<double> max_stderr;   ///< sample stddev / sqrt(runs); 0 for one run
  std::vector<double> opt_ratio;    ///< NaN when no optimal arm is defined
  std::vector<double> max_median;   ///< filled in median_quantile mode only
  std::vector<double> max_q25;
  std::vector<double> max_q75;

  std::size_t size() const { return max_mean.size(); }
  bool has_quantiles() const { return !max_median.empty(); }
};

/// Per-step aggregate over runs of equal length. The result does not depend on
/// the order of `runs`. Throws std::invalid_argument on empty or ragged input.
TransitionSeries aggregate(std::span<const RunTrajectory> runs,
                           std::optional<std::size_t> optimal_arm,
                           Aggregation mode = Aggregation::mean_stderr);

/// Linear-interpolation quantile (type 7) of `values`; sorts a copy.
double quantile(std::vector<double> values, double q);

/// Trailing moving average over `window` steps, used for plotting only.
std::vector<double> smooth(std::span<const double> series, std::size_t window);

}  // namespace maxbandit

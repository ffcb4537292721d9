#include "maxbandit/synthetic.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "maxbandit/kernels.hpp"

namespace maxbandit {

ProblemName parse_problem(std::string_view name) {
  if (name == "easy") return ProblemName::easy;
  if (name == "difficult") return ProblemName::difficult;
  if (name == "unfavorable") return ProblemName::unfavorable;
  throw std::invalid_argument("unknown problem '" + std::string(name) + "'");
}

std::string_view problem_name(ProblemName name) {
  switch (name) {
    case ProblemName::easy: return "easy";
    case ProblemName::difficult: return "difficult";
    case ProblemName::unfavorable: return "unfavorable";
  }
  return "?";
}

SyntheticProblem make_problem(ProblemName name) {
  switch (name) {
    case ProblemName::easy:
      return {"easy", {{1.0, 1.0}, {0.0, 2.0}, {-1.0, 3.0}}, 2};
    case ProblemName::difficult:
      return {"difficult", {{-0.2, 1.1}, {0.0, 1.0}, {-0.8, 1.2}}, 0};
    case ProblemName::unfavorable:
      return {"unfavorable", {{1.0, 1.0}, {0.0, 1.0}, {-1.0, 1.0}}, 0};
  }
  throw std::invalid_argument("unknown problem");
}

void RunTrajectory::push(std::int32_t arm, double reward) {
  const double best = running_max.empty() ? reward : std::max(running_max.back(), reward);
  arms.push_back(arm);
  rewards.push_back(reward);
  running_max.push_back(best);
}

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) {
  std::seed_seq seq{static_cast<std::uint32_t>(master), static_cast<std::uint32_t>(master >> 32),
                    static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32)};
  std::uint32_t out[2];
  seq.generate(out, out + 2);
  return (static_cast<std::uint64_t>(out[0]) << 32) | out[1];
}

Rng make_rng(std::uint64_t seed, std::uint64_t stream) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stream), 0x6d61786bU};
  return Rng(seq);
}

RunTrajectory run_episode(const SyntheticProblem& problem, const PolicyConfig& policy,
                          std::int64_t horizon, std::uint64_t seed) {
  if (horizon < 1) throw std::invalid_argument("run_episode: horizon must be at least 1");
  if (problem.arms.empty()) throw std::invalid_argument("run_episode: problem has no arms");
  Rng env = make_rng(seed, 0);
  Rng ties = make_rng(seed, 1);
  std::normal_distribution<double> unit(0.0, 1.0);
  Bandit bandit(problem.arms.size(), policy, horizon);
  RunTrajectory traj;
  traj.arms.reserve(static_cast<std::size_t>(horizon));
  traj.rewards.reserve(static_cast<std::size_t>(horizon));
  traj.running_max.reserve(static_cast<std::size_t>(horizon));
  for (std::int64_t t = 0; t < horizon; ++t) {
    const std::size_t k = bandit.select(ties);
    const auto& arm = problem.arms[k];
    const double reward = arm.mean + arm.stddev * unit(env);
    bandit.observe(k, reward);
    traj.push(static_cast<std::int32_t>(k), reward);
  }
  return traj;
}

std::string_view aggregation_name(Aggregation mode) {
  return mode == Aggregation::mean_stderr ? "mean-stderr" : "median-quantile";
}

Aggregation parse_aggregation(std::string_view name) {
  if (name == "mean-stderr") return Aggregation::mean_stderr;
  if (name == "median-quantile") return Aggregation::median_quantile;
  throw std::invalid_argument("unknown aggregation '" + std::string(name) + "'");
}

namespace {

double quantile_sorted(std::span<const double> sorted, double q) {
  const double pos = q * static_cast<double>(sorted.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
  const double frac = pos - static_cast<double>(lo);
  return sorted[lo] + frac * (sorted[hi] - sorted[lo]);
}

}  // namespace

double quantile(std::vector<double> values, double q) {
  if (values.empty()) throw std::invalid_argument("quantile: empty input");
  if (!(q >= 0.0 && q <= 1.0)) throw std::invalid_argument("quantile: q outside [0, 1]");
  std::sort(values.begin(), values.end());
  return quantile_sorted(values, q);
}

TransitionSeries aggregate(std::span<const RunTrajectory> runs,
                           std::optional<std::size_t> optimal_arm, Aggregation mode) {
  if (runs.empty()) throw std::invalid_argument("aggregate: no runs");
  const std::size_t length = runs.front().size();
  for (const auto& run : runs) {
    if (run.size() != length || run.arms.size() != length || run.running_max.size() != length) {
      throw std::invalid_argument("aggregate: runs differ in length");
    }
  }
  const double count = static_cast<double>(runs.size());
  TransitionSeries series;
  series.max_mean.resize(length);
  series.max_stderr.resize(length);
  series.opt_ratio.assign(length, optimal_arm ? 0.0 : std::numeric_limits<double>::quiet_NaN());
  if (mode == Aggregation::median_quantile) {
    series.max_median.resize(length);
    series.max_q25.resize(length);
    series.max_q75.resize(length);
  }
  if (optimal_arm) {
    // Integer counts: exact in any order.
    for (const auto& run : runs) {
      kernels::accumulate_matches(series.opt_ratio, run.arms,
                                  static_cast<std::int32_t>(*optimal_arm));
    }
    for (double& r : series.opt_ratio) r /= count;
  }
  // Sorting each column makes the sums independent of run order.
  std::vector<double> column(runs.size());
  for (std::size_t t = 0; t < length; ++t) {
    for (std::size_t i = 0; i < runs.size(); ++i) column[i] = runs[i].running_max[t];
    std::sort(column.begin(), column.end());
    const double mean = std::accumulate(column.begin(), column.end(), 0.0) / count;
    double ss = 0.0;
    for (double v : column) ss += (v - mean) * (v - mean);
    series.max_mean[t] = mean;
    series.max_stderr[t] = runs.size() > 1 ? std::sqrt(ss / (count - 1.0)) / std::sqrt(count) : 0.0;
    if (mode == Aggregation::median_quantile) {
      series.max_median[t] = quantile_sorted(column, 0.5);
      series.max_q25[t] = quantile_sorted(column, 0.25);
      series.max_q75[t] = quantile_sorted(column, 0.75);
    }
  }
  return series;
}

std::vector<double> smooth(std::span<const double> series, std::size_t window) {
  if (window == 0) throw std::invalid_argument("smooth: window must be positive");
  std::vector<double> out(series.size());
  double acc = 0.0;
  for (std::size_t t = 0; t < series.size(); ++t) {
    acc += series[t];
    if (t >= window) acc -= series[t - window];
    out[t] = acc / static_cast<double>(std::min(t + 1, window));
  }
  return out;
}

}  // namespace maxbandit

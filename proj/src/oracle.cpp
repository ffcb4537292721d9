#include "maxbandit/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <random>
#include <sstream>
#include <stdexcept>

#include "maxbandit/kernels.hpp"
#include "maxbandit/special_functions.hpp"
#include "maxbandit/synthetic.hpp"

namespace maxbandit {
namespace {

constexpr double kLogSqrtTwoPi = 0.91893853320467274178;

// ln P[Z <= x].
double log_cdf(double x) {
  if (x < -5.0) return std::log(mills_ratio(-x)) - 0.5 * x * x - kLogSqrtTwoPi;
  if (x <= 0.0) return std::log(normal_upper_tail(-x));
  return std::log1p(-normal_upper_tail(x));
}

// ln(-ln P[Z <= x]).
double log_neg_log_cdf(double x) {
  if (x > 5.0) {
    const double log_q = std::log(mills_ratio(x)) - 0.5 * x * x - kLogSqrtTwoPi;
    const double q = std::exp(log_q);
    if (q < 1e-12) return log_q + 0.5 * q;
    return std::log(-std::log1p(-q));
  }
  return std::log(-log_cdf(x));
}

// P[max of T standard normals <= x] with T = exp(log_horizon).
double max_cdf(double x, double log_horizon) {
  return std::exp(-std::exp(log_horizon + log_neg_log_cdf(x)));
}

template <class F>
double simpson(F&& f, double a, double b, int intervals) {
  const double h = (b - a) / intervals;
  double sum = f(a) + f(b);
  for (int i = 1; i < intervals; ++i) sum += f(a + i * h) * (i % 2 == 1 ? 4.0 : 2.0);
  return sum * h / 3.0;
}

void check_arms(const GaussianArmSet& arms) {
  if (arms.empty()) throw std::invalid_argument("empty arm set");
  for (const auto& a : arms) {
    if (!(a.variance > 0.0) || !std::isfinite(a.variance) || !std::isfinite(a.mean)) {
      throw std::invalid_argument("arm variance must be positive and finite");
    }
  }
}

// Smallest beta > 1 root of d/dbeta of the log lower bound.
double optimal_beta(double y) {
  auto slope = [y](double b) { return 1.0 / (b - 1.0) - 2.5 / b - 2.0 * b * y * y; };
  double lo = 1.0 + 1e-15;
  double hi = 2.0;
  while (slope(hi) > 0.0) hi *= 2.0;
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    (slope(mid) > 0.0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

double log_ei_lower(const GaussianArm& a, double r) {
  const double s = std::sqrt(2.0) * a.stddev();
  return std::log(s) + log_best_erfc_integral_lower((r - a.mean) / s);
}

double log_ei_upper(const GaussianArm& a, double r) {
  const double s = std::sqrt(2.0) * a.stddev();
  const double y = (r - a.mean) / s;
  return std::log(s) + std::log(std::sqrt(std::numbers::pi) / 4.0) - y * y;
}

bool bound_certified(const GaussianArmSet& arms, std::size_t k, double r) {
  for (const auto& a : arms) {
    if (r <= a.mean) return false;
  }
  const double lower = log_ei_lower(arms[k], r);
  for (std::size_t j = 0; j < arms.size(); ++j) {
    if (j != k && !(lower > log_ei_upper(arms[j], r))) return false;
  }
  return true;
}

std::string fmt(const char* spec, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, spec, v);
  return buf;
}

}  // namespace

double GaussianArm::stddev() const { return std::sqrt(variance); }

double gaussian_ei(double mean, double stddev, double incumbent) {
  return gaussian_expected_improvement(mean, stddev, incumbent);
}

MonteCarloEstimate monte_carlo_ei(double mean, double stddev, double incumbent,
                                  std::size_t samples, std::uint64_t seed) {
  if (samples < 2) throw std::invalid_argument("monte_carlo_ei: need at least two samples");
  Rng rng = make_rng(seed, 0);
  std::normal_distribution<double> dist(mean, stddev);
  constexpr std::size_t kBatch = 4096;
  std::vector<double> batch(kBatch);
  double sum = 0.0;
  double sum_sq = 0.0;
  for (std::size_t done = 0; done < samples;) {
    const std::size_t n = std::min(kBatch, samples - done);
    for (std::size_t i = 0; i < n; ++i) batch[i] = dist(rng);
    const auto m = kernels::excess_moments(std::span<const double>(batch.data(), n), incumbent);
    sum += m.sum;
    sum_sq += m.sum_sq;
    done += n;
  }
  const double count = static_cast<double>(samples);
  const double mean_excess = sum / count;
  const double var = std::max(0.0, (sum_sq - count * mean_excess * mean_excess) / (count - 1.0));
  return {mean_excess, std::sqrt(var / count)};
}

Interval gaussian_max_expectation_bounds(double mean, double stddev, double horizon) {
  if (!(horizon >= 2.0)) throw std::invalid_argument("gaussian_max_expectation_bounds: T must be at least 2");
  return gaussian_max_expectation_bounds_log(mean, stddev, std::log(horizon));
}

Interval gaussian_max_expectation_bounds_log(double mean, double stddev, double log_horizon) {
  if (!(log_horizon >= std::log(2.0) * (1.0 - 1e-15))) {
    throw std::invalid_argument("gaussian_max_expectation_bounds: T must be at least 2");
  }
  if (!(stddev >= 0.0)) throw std::invalid_argument("gaussian_max_expectation_bounds: negative stddev");
  const double root = std::sqrt(log_horizon);
  return {mean + stddev * root / std::sqrt(std::numbers::pi * std::numbers::ln2),
          mean + std::numbers::sqrt2 * stddev * root};
}

double expected_gaussian_max_log(double mean, double stddev, double log_horizon) {
  if (!(log_horizon >= 0.0)) throw std::invalid_argument("expected_gaussian_max: T must be at least 1");
  if (!(stddev > 0.0)) throw std::invalid_argument("expected_gaussian_max: stddev must be positive");
  // E[M] = int_0^inf (1 - F(x)) dx - int_-inf^0 F(x) dx with F = Phi^T.
  const double upper = std::sqrt(2.0 * log_horizon) + 12.0;
  const double positive = simpson(
      [&](double x) { return -std::expm1(-std::exp(log_horizon + log_neg_log_cdf(x))); }, 0.0,
      upper, 40000);
  const double negative =
      simpson([&](double x) { return max_cdf(x, log_horizon); }, -40.0, 0.0, 40000);
  return mean + stddev * (positive - negative);
}

SingleArmVerdict single_armed_oracle_log(const GaussianArmSet& arms, double log_horizon) {
  check_arms(arms);
  SingleArmVerdict v;
  for (const auto& a : arms) {
    v.bounds.push_back(gaussian_max_expectation_bounds_log(a.mean, a.stddev(), log_horizon));
  }
  for (std::size_t k = 0; k < arms.size() && !v.certified; ++k) {
    bool beats_all = true;
    for (std::size_t j = 0; j < arms.size(); ++j) {
      if (j != k && !(v.bounds[k].lower > v.bounds[j].upper)) beats_all = false;
    }
    if (beats_all) v.certified = k;
  }
  if (!v.certified) {
    for (const auto& a : arms) {
      v.expected_max.push_back(expected_gaussian_max_log(a.mean, a.stddev(), log_horizon));
    }
    v.numeric_pick = static_cast<std::size_t>(
        std::max_element(v.expected_max.begin(), v.expected_max.end()) - v.expected_max.begin());
  }
  return v;
}

SingleArmVerdict single_armed_oracle(const GaussianArmSet& arms, double horizon) {
  if (!(horizon >= 2.0)) throw std::invalid_argument("single_armed_oracle: T must be at least 2");
  return single_armed_oracle_log(arms, std::log(horizon));
}

std::size_t kikkawa_greedy_select(const GaussianArmSet& arms, double incumbent) {
  check_arms(arms);
  std::size_t best = 0;
  if (incumbent == -kInfinity) {
    for (std::size_t k = 1; k < arms.size(); ++k) {
      if (arms[k].mean > arms[best].mean) best = k;
    }
    return best;
  }
  double best_value = -kInfinity;
  for (std::size_t k = 0; k < arms.size(); ++k) {
    const double v = log_gaussian_expected_improvement(arms[k].mean, arms[k].stddev(), incumbent);
    if (v > best_value) {
      best_value = v;
      best = k;
    }
  }
  return best;
}

std::vector<double> simulate_running_max(const ArmPolicy& policy, const GaussianArmSet& arms,
                                         std::int64_t horizon, std::uint64_t seed) {
  check_arms(arms);
  if (horizon < 1) throw std::invalid_argument("simulate_running_max: horizon must be at least 1");
  Rng env = make_rng(seed, 0);
  Rng ties = make_rng(seed, 1);
  std::normal_distribution<double> unit(0.0, 1.0);
  std::vector<double> curve(static_cast<std::size_t>(horizon));
  double best = -kInfinity;

  if (const auto* fixed = std::get_if<FixedArmPolicy>(&policy)) {
    const auto& a = arms.at(fixed->arm);
    const double sd = a.stddev();
    for (auto& c : curve) {
      best = std::max(best, a.mean + sd * unit(env));
      c = best;
    }
  } else if (std::holds_alternative<GreedyOraclePolicy>(policy)) {
    for (auto& c : curve) {
      const auto& a = arms[kikkawa_greedy_select(arms, best)];
      best = std::max(best, a.mean + a.stddev() * unit(env));
      c = best;
    }
  } else {
    Bandit bandit(arms.size(), std::get<PolicyConfig>(policy), horizon);
    for (auto& c : curve) {
      const std::size_t k = bandit.select(ties);
      const double r = arms[k].mean + arms[k].stddev() * unit(env);
      bandit.observe(k, r);
      best = std::max(best, r);
      c = best;
    }
  }
  return curve;
}

namespace {

RegretReport regret_impl(const ArmPolicy& oracle, const ArmPolicy& policy, const GaussianArmSet& arms,
                         std::int64_t horizon, std::size_t samples, std::uint64_t seed,
                         std::int64_t policy_horizon) {
  if (samples < 1) throw std::invalid_argument("regret: need at least one sample");
  if (horizon < 1) throw std::invalid_argument("regret: horizon must be at least 1");
  const auto length = static_cast<std::size_t>(policy_horizon);
  std::vector<double> sum(length, 0.0);
  std::vector<double> sum_sq(length, 0.0);
  double oracle_sum = 0.0, oracle_sq = 0.0, diff_sum = 0.0, diff_sq = 0.0;
  for (std::size_t i = 0; i < samples; ++i) {
    const std::uint64_t s = derive_seed(seed, i);
    const double o = simulate_running_max(oracle, arms, horizon, s).back();
    const auto curve = simulate_running_max(policy, arms, policy_horizon, s);
    kernels::accumulate_moments(sum, sum_sq, curve);
    const double d = o - curve[static_cast<std::size_t>(horizon) - 1];
    oracle_sum += o;
    oracle_sq += o * o;
    diff_sum += d;
    diff_sq += d * d;
  }
  const double n = static_cast<double>(samples);
  auto stderr_of = [n](double s, double sq) {
    if (n < 2.0) return 0.0;
    const double m = s / n;
    return std::sqrt(std::max(0.0, (sq - n * m * m) / (n - 1.0)) / n);
  };
  RegretReport rep;
  rep.horizon = horizon;
  rep.oracle_max = oracle_sum / n;
  rep.oracle_stderr = stderr_of(oracle_sum, oracle_sq);
  const auto at = static_cast<std::size_t>(horizon) - 1;
  rep.policy_max = sum[at] / n;
  rep.policy_stderr = stderr_of(sum[at], sum_sq[at]);
  rep.carpentier = diff_sum / n;
  rep.carpentier_stderr = stderr_of(diff_sum, diff_sq);

  // Mean running max is non-decreasing, so the first crossing is a partition point.
  const double target = rep.oracle_max;
  const auto it = std::partition_point(sum.begin(), sum.end(),
                                       [&](double s) { return s / n < target; });
  if (it == sum.end()) {
    rep.nishihara_exceeded = true;
    rep.nishihara = static_cast<double>(policy_horizon) / static_cast<double>(horizon);
  } else {
    rep.nishihara = static_cast<double>(it - sum.begin() + 1) / static_cast<double>(horizon);
  }
  return rep;
}

}  // namespace

RegretReport carpentier_regret(const ArmPolicy& oracle, const ArmPolicy& policy,
                               const GaussianArmSet& arms, std::int64_t horizon,
                               std::size_t samples, std::uint64_t seed) {
  return regret_impl(oracle, policy, arms, horizon, samples, seed, horizon);
}

RegretReport nishihara_regret(const ArmPolicy& oracle, const ArmPolicy& policy,
                              const GaussianArmSet& arms, std::int64_t horizon, std::size_t samples,
                              std::uint64_t seed, double cap_multiple) {
  if (!(cap_multiple >= 1.0)) throw std::invalid_argument("nishihara_regret: cap must be at least 1");
  const auto cap = static_cast<std::int64_t>(std::ceil(cap_multiple * static_cast<double>(horizon)));
  return regret_impl(oracle, policy, arms, horizon, samples, seed, cap);
}

double bernstein_gamma_plus(double beta) { return beta * beta + 2.0 * std::numbers::sqrt2 * beta; }

double bernstein_gamma_minus(double beta) {
  if (beta < 1.0 / std::numbers::sqrt2) return -beta * beta + 2.0 * std::numbers::sqrt2 * beta;
  return 1.0 + beta * beta;
}

Interval bernstein_bounds(std::span<const double> samples, double alpha, double b) {
  if (samples.empty()) throw std::invalid_argument("bernstein_bounds: no samples");
  if (!(alpha > 0.0 && alpha < 1.0)) throw std::invalid_argument("bernstein_bounds: alpha outside (0, 1)");
  if (!(b > 0.0)) throw std::invalid_argument("bernstein_bounds: b must be positive");
  double sum = 0.0;
  for (double x : samples) sum += x;
  const double n = static_cast<double>(samples.size());
  const double mean = sum / n;
  const double beta = std::sqrt(-std::log(alpha) / n);
  return {mean - bernstein_gamma_plus(beta) * b, mean + bernstein_gamma_minus(beta) * b};
}

Interval erfc_integral_bounds(double y, double beta) {
  if (!(y > 0.0)) throw std::invalid_argument("erfc_integral_bounds: y must be positive");
  if (!(beta > 1.0)) throw std::invalid_argument("erfc_integral_bounds: beta must exceed 1");
  const double c_sq = 2.0 * std::numbers::e / std::numbers::pi * (beta - 1.0) / (beta * beta);
  const double root_pi = std::sqrt(std::numbers::pi);
  return {root_pi * c_sq / (4.0 * std::sqrt(beta)) * std::exp(-beta * beta * y * y),
          root_pi / 4.0 * std::exp(-y * y)};
}

double log_best_erfc_integral_lower(double y) {
  if (!(y > 0.0)) throw std::invalid_argument("log_best_erfc_integral_lower: y must be positive");
  const double b = optimal_beta(y);
  return std::log(std::sqrt(std::numbers::pi) / 4.0) + std::log(2.0 * std::numbers::e / std::numbers::pi) +
         std::log(b - 1.0) - 2.5 * std::log(b) - b * b * y * y;
}

Example1Report example1_report() {
  Example1Report rep;
  rep.arms = {{0.0, 0.01}, {-1.0, 0.25}, {-15.0, 4.0}};
  const double a = 1.0 / std::sqrt(std::numbers::pi * std::numbers::ln2);
  for (std::size_t i = 0; i < rep.arms.size(); ++i) {
    // Work in s = sqrt(ln T); each rival j gives a half-line in s.
    double lo = std::sqrt(std::numbers::ln2);
    double hi = kInfinity;
    for (std::size_t j = 0; j < rep.arms.size(); ++j) {
      if (j == i) continue;
      const double coef = a * rep.arms[i].stddev() - std::numbers::sqrt2 * rep.arms[j].stddev();
      const double gap = rep.arms[j].mean - rep.arms[i].mean;
      if (coef > 0.0) {
        lo = std::max(lo, gap / coef);
      } else if (coef < 0.0) {
        hi = std::min(hi, gap / coef);
      } else if (!(gap < 0.0)) {
        hi = -kInfinity;
      }
    }
    if (lo < hi) {
      rep.certified_log_horizon.push_back(Interval{lo * lo, hi * hi});
    } else {
      rep.certified_log_horizon.push_back(std::nullopt);
    }
  }
  return rep;
}

Example2Report example2_report(double scan_limit) {
  Example2Report rep;
  rep.arms = {{0.0, 1.0}, {-2.0, 2.0}, {-6.0, 3.0}};
  const auto& arms = rep.arms;

  auto log_ei = [&](std::size_t k, double r) {
    return log_gaussian_expected_improvement(arms[k].mean, arms[k].stddev(), r);
  };
  const std::pair<std::size_t, std::size_t> pairs[] = {{0, 1}, {1, 2}, {0, 2}};
  for (const auto& [i, j] : pairs) {
    auto diff = [&](double r) { return log_ei(i, r) - log_ei(j, r); };
    double prev_r = -5.0;
    double prev = diff(prev_r);
    for (double r = prev_r + 0.01; r <= 100.0; r += 0.01) {
      const double cur = diff(r);
      if ((prev > 0.0) != (cur > 0.0)) {
        double lo = prev_r, hi = r;
        for (int it = 0; it < 100; ++it) {
          const double mid = 0.5 * (lo + hi);
          ((diff(mid) > 0.0) == (prev > 0.0) ? lo : hi) = mid;
        }
        rep.crossings.push_back({i, j, 0.5 * (lo + hi)});
        break;
      }
      prev_r = r;
      prev = cur;
    }
  }

  constexpr double kStep = 1e-3;
  rep.certified.resize(arms.size());
  for (std::size_t k = 0; k < arms.size(); ++k) {
    auto pred = [&](double r) { return bound_certified(arms, k, r); };
    auto refine = [&](double a, double b) {
      const bool at_a = pred(a);
      for (int it = 0; it < 80; ++it) {
        const double mid = 0.5 * (a + b);
        (pred(mid) == at_a ? a : b) = mid;
      }
      return 0.5 * (a + b);
    };
    bool inside = false;
    double start = 0.0;
    double prev_r = 0.0;
    const auto steps = static_cast<long>(std::floor(scan_limit / kStep));
    for (long s = 1; s <= steps; ++s) {
      const double r = static_cast<double>(s) * kStep;
      const bool now = pred(r);
      if (now && !inside) start = s == 1 ? r : refine(prev_r, r);
      if (!now && inside) rep.certified[k].push_back({start, refine(prev_r, r)});
      inside = now;
      prev_r = r;
    }
    if (inside) rep.certified[k].push_back({start, scan_limit});
  }

  for (double probe : {1.3, 7.0, 11.9, 18.9}) {
    rep.probes.emplace_back(probe, kikkawa_greedy_select(arms, probe));
  }
  return rep;
}

std::string format_example1(const Example1Report& report) {
  std::ostringstream out;
  out << "single-armed oracle, arms N(0,0.01) N(-1,0.25) N(-15,4)\n";
  for (std::size_t k = 0; k < report.arms.size(); ++k) {
    out << "arm " << k + 1 << ": ";
    const auto& iv = report.certified_log_horizon[k];
    if (!iv) {
      out << "never certified\n";
      continue;
    }
    out << "certified for " << fmt("%.4g", std::exp(iv->lower)) << " < T";
    if (std::isfinite(iv->upper)) out << " < " << fmt("%.4g", std::exp(iv->upper));
    out << "  (ln T in [" << fmt("%.6g", iv->lower) << ", " << fmt("%.6g", iv->upper) << "])\n";
  }
  return out.str();
}

std::string format_example2(const Example2Report& report) {
  std::ostringstream out;
  out << "greedy oracle, arms N(0,1) N(-2,2) N(-6,3)\n";
  for (const auto& c : report.crossings) {
    out << "EI of arm " << c.first + 1 << " and arm " << c.second + 1 << " cross at r_max = "
        << fmt("%.4f", c.incumbent) << "\n";
  }
  for (std::size_t k = 0; k < report.certified.size(); ++k) {
    out << "arm " << k + 1 << " certified by the erfc bounds for r_max in:";
    if (report.certified[k].empty()) out << " (none)";
    for (const auto& iv : report.certified[k]) {
      out << " [" << fmt("%.3f", iv.lower) << ", " << fmt("%.3f", iv.upper) << "]";
    }
    out << "\n";
  }
  for (const auto& [r, k] : report.probes) {
    out << "r_max = " << fmt("%.1f", r) << " -> arm " << k + 1 << "\n";
  }
  return out.str();
}

}  // namespace maxbandit

#include "maxbandit/baselines.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "index_buffer.hpp"

namespace maxbandit {
namespace {

bool unexplored(std::int64_t count, std::int64_t total) { return count == 0 || total < 2; }

bool in_warmup(const WarmupSigma& warmup, std::int64_t step) {
  return step <= static_cast<std::int64_t>(warmup.length()) || !warmup.ready();
}

}  // namespace

std::size_t RewardLog::total() const {
  std::size_t n = 0;
  for (const auto& r : rewards_) n += r.size();
  return n;
}

void WarmupSigma::observe(double reward) {
  if (ready()) return;
  first_.push_back(reward);
  if (!ready()) return;
  const double n = static_cast<double>(first_.size());
  if (first_.size() < 2) {
    sigma_ = 0.0;
    return;
  }
  const double mean = std::accumulate(first_.begin(), first_.end(), 0.0) / n;
  double ss = 0.0;
  for (double r : first_) ss += (r - mean) * (r - mean);
  sigma_ = std::sqrt(ss / (n - 1.0));
}

RankThreshold::RankThreshold(std::size_t arms, std::size_t rank)
    : rank_(rank), above_(arms), above_sum_(arms, 0.0) {
  if (rank == 0) throw std::invalid_argument("RankThreshold: rank must be positive");
}

void RankThreshold::add(std::size_t arm, double reward) {
  if (arm >= above_.size()) throw std::out_of_range("RankThreshold: arm index out of range");
  if (!full()) {
    top_.push(reward);
    above_[arm].push(reward);
    above_sum_[arm] += reward;
    if (full()) prune();
    return;
  }
  if (reward <= top_.top()) return;
  top_.pop();
  top_.push(reward);
  above_[arm].push(reward);
  above_sum_[arm] += reward;
  prune();
}

void RankThreshold::prune() {
  const double cut = top_.top();
  for (std::size_t k = 0; k < above_.size(); ++k) {
    auto& heap = above_[k];
    while (!heap.empty() && heap.top() <= cut) {
      above_sum_[k] -= heap.top();
      heap.pop();
    }
    if (heap.empty()) above_sum_[k] = 0.0;
  }
}

double rank_threshold(const RewardLog& log, std::size_t rank) {
  if (rank == 0) throw std::invalid_argument("rank_threshold: rank must be positive");
  std::vector<double> all;
  all.reserve(log.total());
  for (std::size_t k = 0; k < log.arms(); ++k) {
    auto r = log.rewards(k);
    all.insert(all.end(), r.begin(), r.end());
  }
  if (all.size() < rank) return -kInfinity;
  auto nth = all.begin() + static_cast<std::ptrdiff_t>(rank - 1);
  std::nth_element(all.begin(), nth, all.end(), std::greater<>());
  return *nth;
}

double threshold_ascent_index(std::int64_t above, std::int64_t count, double horizon,
                              std::size_t arms, std::int64_t total) {
  if (unexplored(count, total)) return kInfinity;
  const double n = static_cast<double>(count);
  const double s = static_cast<double>(above);
  const double delta = 2.0 * std::log(static_cast<double>(total));
  const double alpha = std::log(2.0 * horizon * static_cast<double>(arms) / delta);
  return s / n + (alpha + std::sqrt(alpha * (2.0 * s + alpha))) / n;
}

double robust_ucb_max_index(double above_sum, std::int64_t count, std::int64_t total, double best,
                            double threshold, double epsilon) {
  if (unexplored(count, total)) return kInfinity;
  const double n = static_cast<double>(count);
  const double v = std::pow(best - threshold, 1.0 + epsilon);
  const double radius = std::pow(2.0 * std::log(static_cast<double>(total)) / n,
                                 epsilon / (1.0 + epsilon));
  return above_sum / n + 4.0 * std::pow(v, 1.0 / (1.0 + epsilon)) * radius;
}

double sp_ucb_index(const ArmRecord& arm, std::int64_t total, double sigma, double c, double d) {
  if (unexplored(arm.count, total)) return kInfinity;
  const double n = static_cast<double>(arm.count);
  const double m = arm.sum / n;
  const double deviation = std::max(0.0, arm.sum_sq - n * m * m + d);
  return m + c * sigma * std::sqrt(std::log(static_cast<double>(total)) / n) +
         std::sqrt(deviation / n);
}

double ucbe_index(const ArmRecord& arm, std::int64_t total, double sigma, double c) {
  if (unexplored(arm.count, total)) return kInfinity;
  const double n = static_cast<double>(arm.count);
  return arm.sum / n + c * sigma * std::sqrt(static_cast<double>(total) / n);
}

double ucb_index(const ArmRecord& arm, std::int64_t total, double sigma, double c) {
  if (unexplored(arm.count, total)) return kInfinity;
  const double n = static_cast<double>(arm.count);
  return arm.sum / n + c * sigma * std::sqrt(std::log(static_cast<double>(total)) / n);
}

std::size_t threshold_ascent_select(const RewardLog& log, const SharedRecord& shared,
                                    const ThresholdAscentParams& params, Rng& rng) {
  const double cut = rank_threshold(log, params.rank);
  detail::IndexBuffer index(log.arms());
  for (std::size_t k = 0; k < log.arms(); ++k) {
    auto r = log.rewards(k);
    const auto above = std::count_if(r.begin(), r.end(), [cut](double x) { return x > cut; });
    index[k] = threshold_ascent_index(above, static_cast<std::int64_t>(r.size()), params.horizon,
                                      log.arms(), shared.total);
  }
  return argmax_random_ties(index.span(), rng);
}

std::size_t threshold_ascent_select(const RankThreshold& ranks, std::span<const ArmRecord> arms,
                                    const SharedRecord& shared,
                                    const ThresholdAscentParams& params, Rng& rng) {
  if (ranks.rank() != params.rank) {
    throw std::invalid_argument("threshold_ascent_select: tracker rank mismatch");
  }
  detail::IndexBuffer index(arms.size());
  for (std::size_t k = 0; k < arms.size(); ++k) {
    index[k] = threshold_ascent_index(ranks.count_above(k), arms[k].count, params.horizon,
                                      arms.size(), shared.total);
  }
  return argmax_random_ties(index.span(), rng);
}

std::size_t robust_ucb_max_select(const RewardLog& log, const SharedRecord& shared,
                                  const RobustUcbMaxParams& params, Rng& rng) {
  double cut = rank_threshold(log, params.rank);
  if (cut == -kInfinity) {
    cut = kInfinity;
    for (std::size_t k = 0; k < log.arms(); ++k) {
      for (double r : log.rewards(k)) cut = std::min(cut, r);
    }
  }
  detail::IndexBuffer index(log.arms());
  for (std::size_t k = 0; k < log.arms(); ++k) {
    auto r = log.rewards(k);
    double above = 0.0;
    for (double x : r) {
      if (x > cut) above += x;
    }
    index[k] = robust_ucb_max_index(above, static_cast<std::int64_t>(r.size()), shared.total,
                                    shared.best, cut, params.epsilon);
  }
  return argmax_random_ties(index.span(), rng);
}

std::size_t robust_ucb_max_select(const RankThreshold& ranks, const RewardLog& log,
                                  std::span<const ArmRecord> arms, const SharedRecord& shared,
                                  const RobustUcbMaxParams& params, Rng& rng) {
  if (ranks.rank() != params.rank) {
    throw std::invalid_argument("robust_ucb_max_select: tracker rank mismatch");
  }
  if (!ranks.full()) {
    return robust_ucb_max_select(log, shared, params, rng);
  }
  detail::IndexBuffer index(arms.size());
  for (std::size_t k = 0; k < arms.size(); ++k) {
    index[k] = robust_ucb_max_index(ranks.sum_above(k), arms[k].count, shared.total, shared.best,
                                    ranks.threshold(), params.epsilon);
  }
  return argmax_random_ties(index.span(), rng);
}

std::size_t sp_ucb_select(const SharedRecord& shared, std::span<const ArmRecord> arms,
                          const WarmupSigma& warmup, std::int64_t step, const SpUcbParams& params,
                          Rng& rng) {
  if (in_warmup(warmup, step)) return random_select(arms.size(), rng);
  detail::IndexBuffer index(arms.size());
  for (std::size_t k = 0; k < arms.size(); ++k) {
    index[k] = sp_ucb_index(arms[k], shared.total, warmup.sigma(), params.c, params.d);
  }
  return argmax_random_ties(index.span(), rng);
}

std::size_t ucbe_select(const SharedRecord& shared, std::span<const ArmRecord> arms,
                        const WarmupSigma& warmup, std::int64_t step, double c, Rng& rng) {
  if (in_warmup(warmup, step)) return random_select(arms.size(), rng);
  detail::IndexBuffer index(arms.size());
  for (std::size_t k = 0; k < arms.size(); ++k) {
    index[k] = ucbe_index(arms[k], shared.total, warmup.sigma(), c);
  }
  return argmax_random_ties(index.span(), rng);
}

std::size_t ucb_select(const SharedRecord& shared, std::span<const ArmRecord> arms,
                       const WarmupSigma& warmup, std::int64_t step, double c, Rng& rng) {
  if (in_warmup(warmup, step)) return random_select(arms.size(), rng);
  detail::IndexBuffer index(arms.size());
  for (std::size_t k = 0; k < arms.size(); ++k) {
    index[k] = ucb_index(arms[k], shared.total, warmup.sigma(), c);
  }
  return argmax_random_ties(index.span(), rng);
}

}  // namespace maxbandit

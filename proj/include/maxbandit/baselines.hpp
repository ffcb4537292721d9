#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <queue>
#include <span>
#include <vector>

#include "maxbandit/records.hpp"

namespace maxbandit {

/// Raw rewards per arm, in arrival order.
class RewardLog {
 public:
  explicit RewardLog(std::size_t arms) : rewards_(arms) {}

  void add(std::size_t arm, double reward) { rewards_.at(arm).push_back(reward); }
  std::size_t arms() const { return rewards_.size(); }
  std::span<const double> rewards(std::size_t arm) const { return rewards_.at(arm); }
  std::size_t total() const;

 private:
  std::vector<std::vector<double>> rewards_;
};

/// Reward spread estimated from the first `length` rewards of a run and then frozen.
class WarmupSigma {
 public:
  explicit WarmupSigma(std::size_t length = 10) : length_(length) { first_.reserve(length); }

  void observe(double reward);
  bool ready() const { return first_.size() >= length_; }
  std::size_t length() const { return length_; }
  /// Sample standard deviation (n - 1 denominator) of the warm-up rewards; 0 before ready().
  double sigma() const { return sigma_; }

 private:
  std::size_t length_;
  std::vector<double> first_;
  double sigma_ = 0.0;
};

/// Tracks the `rank`-th largest reward seen so far and, per arm, the rewards
/// strictly above it. The threshold only rises once `rank` rewards exist, so
/// each reward enters and leaves a per-arm heap at most once.
class RankThreshold {
 public:
  RankThreshold(std::size_t arms, std::size_t rank);

  void add(std::size_t arm, double reward);
  bool full() const { return top_.size() >= rank_; }
  std::size_t rank() const { return rank_; }
  /// rank-th largest reward, or -inf while fewer than `rank` rewards exist.
  double threshold() const { return full() ? top_.top() : -kInfinity; }
  std::int64_t count_above(std::size_t arm) const {
    return static_cast<std::int64_t>(above_.at(arm).size());
  }
  double sum_above(std::size_t arm) const { return above_sum_.at(arm); }

 private:
  using MinHeap = std::priority_queue<double, std::vector<double>, std::greater<>>;
  void prune();

  std::size_t rank_;
  MinHeap top_;
  std::vector<MinHeap> above_;
  std::vector<double> above_sum_;
};

/// `rank`-th largest value over all arms of `log`; -inf if fewer exist.
double rank_threshold(const RewardLog& log, std::size_t rank);

// Selection indices. Each returns +inf when count == 0 or total < 2.

double threshold_ascent_index(std::int64_t above, std::int64_t count, double horizon,
                              std::size_t arms, std::int64_t total);
double robust_ucb_max_index(double above_sum, std::int64_t count, std::int64_t total, double best,
                            double threshold, double epsilon);
double sp_ucb_index(const ArmRecord& arm, std::int64_t total, double sigma, double c, double d);
double ucbe_index(const ArmRecord& arm, std::int64_t total, double sigma, double c);
double ucb_index(const ArmRecord& arm, std::int64_t total, double sigma, double c);

struct ThresholdAscentParams {
  double horizon = 10000.0;
  std::size_t rank = 100;  ///< s
};

struct RobustUcbMaxParams {
  double epsilon = 0.4;
  std::size_t rank = 100;
};

struct SpUcbParams {
  double c = 0.1;
  double d = 32.0;
};

/// ThresholdAscent with delta = 2 ln(nu), recomputing the threshold from the full log.
std::size_t threshold_ascent_select(const RewardLog& log, const SharedRecord& shared,
                                    const ThresholdAscentParams& params, Rng& rng);
/// Same rule driven by an incrementally maintained RankThreshold of rank params.rank.
std::size_t threshold_ascent_select(const RankThreshold& ranks, std::span<const ArmRecord> arms,
                                    const SharedRecord& shared,
                                    const ThresholdAscentParams& params, Rng& rng);

/// RobustUCBMax. Before `rank` rewards exist the threshold u falls back to the
/// minimum observed reward.
std::size_t robust_ucb_max_select(const RewardLog& log, const SharedRecord& shared,
                                  const RobustUcbMaxParams& params, Rng& rng);
std::size_t robust_ucb_max_select(const RankThreshold& ranks, const RewardLog& log,
                                  std::span<const ArmRecord> arms, const SharedRecord& shared,
                                  const RobustUcbMaxParams& params, Rng& rng);

// Variance-scaled rules: random during the warm-up (step <= warmup.length()),
// where `step` is the 1-based index of the selection being made.

std::size_t sp_ucb_select(const SharedRecord& shared, std::span<const ArmRecord> arms,
                          const WarmupSigma& warmup, std::int64_t step, const SpUcbParams& params,
                          Rng& rng);
std::size_t ucbe_select(const SharedRecord& shared, std::span<const ArmRecord> arms,
                        const WarmupSigma& warmup, std::int64_t step, double c, Rng& rng);
std::size_t ucb_select(const SharedRecord& shared, std::span<const ArmRecord> arms,
                       const WarmupSigma& warmup, std::int64_t step, double c, Rng& rng);

}  // namespace maxbandit

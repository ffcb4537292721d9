#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <random>
#include <span>

namespace maxbandit {

/// Random source injected into every selection rule. Never global.
using Rng = std::mt19937_64;

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

/// Sufficient statistics of one arm: pull count, reward sum, squared-reward sum.
struct ArmRecord {
  std::int64_t count = 0;
  double sum = 0.0;
  double sum_sq = 0.0;

  double mean() const { return sum / static_cast<double>(count); }
  void add(double reward) {
    ++count;
    sum += reward;
    sum_sq += reward * reward;
  }
  friend bool operator==(const ArmRecord&, const ArmRecord&) = default;
};

/// Statistics shared by the arms of one decision point.
struct SharedRecord {
  std::int64_t total = 0;          ///< selections so far across all arms
  double best = -kInfinity;        ///< best reward observed so far
  std::size_t arms = 0;

  friend bool operator==(const SharedRecord&, const SharedRecord&) = default;
};

/// Records reward `reward` for arm `arm`. Throws std::out_of_range on a bad index.
void update(SharedRecord& shared, std::span<ArmRecord> arms, std::size_t arm, double reward);

/// Uniform choice over [0, arms).
std::size_t random_select(std::size_t arms, Rng& rng);

/// Index of the largest value; ties (including several +inf) are broken
/// uniformly at random. NaN entries never win unless every entry is NaN.
std::size_t argmax_random_ties(std::span<const double> values, Rng& rng);

}  // namespace maxbandit

#include "maxbandit/records.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace maxbandit {

void update(SharedRecord& shared, std::span<ArmRecord> arms, std::size_t arm, double reward) {
  if (arm >= arms.size()) {
    throw std::out_of_range("update: arm index out of range");
  }
  arms[arm].add(reward);
  ++shared.total;
  shared.best = std::max(shared.best, reward);
}

std::size_t random_select(std::size_t arms, Rng& rng) {
  if (arms == 0) {
    throw std::invalid_argument("random_select: no arms");
  }
  if (arms == 1) {
    return 0;
  }
  std::uniform_int_distribution<std::size_t> pick(0, arms - 1);
  return pick(rng);
}

std::size_t argmax_random_ties(std::span<const double> values, Rng& rng) {
  if (values.empty()) {
    throw std::invalid_argument("argmax_random_ties: empty input");
  }
  double best = -kInfinity;
  bool found = false;
  for (double v : values) {
    if (!std::isnan(v) && (!found || v > best)) {
      best = v;
      found = true;
    }
  }
  if (!found) {
    return random_select(values.size(), rng);
  }
  std::size_t ties = 0;
  std::size_t first = 0;
  for (std::size_t k = 0; k < values.size(); ++k) {
    if (values[k] == best && ties++ == 0) first = k;
  }
  if (ties == 1) {
    return first;
  }
  std::size_t pick = random_select(ties, rng);
  for (std::size_t k = first; k < values.size(); ++k) {
    if (values[k] == best && pick-- == 0) return k;
  }
  return first;  // unreachable
}

}  // namespace maxbandit

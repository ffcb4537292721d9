#include <algorithm>
#include <limits>

#include "kernels_impl.hpp"

namespace maxbandit::kernels::scalar {

Moments excess_moments(std::span<const double> x, double floor) {
  Moments m;
  for (double v : x) {
    const double e = std::max(v - floor, 0.0);
    m.sum += e;
    m.sum_sq += e * e;
  }
  return m;
}

double max_value(std::span<const double> x) {
  double best = -std::numeric_limits<double>::infinity();
  for (double v : x) best = std::max(best, v);
  return best;
}

void accumulate_moments(std::span<double> sum, std::span<double> sum_sq,
                        std::span<const double> x) {
  for (std::size_t i = 0; i < x.size(); ++i) {
    sum[i] += x[i];
    sum_sq[i] += x[i] * x[i];
  }
}

void accumulate_matches(std::span<double> hits, std::span<const std::int32_t> labels,
                        std::int32_t target) {
  for (std::size_t i = 0; i < labels.size(); ++i) {
    hits[i] += labels[i] == target ? 1.0 : 0.0;
  }
}

}  // namespace maxbandit::kernels::scalar

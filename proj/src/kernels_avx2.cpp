// Compiled with -mavx2; only reached after a runtime CPU check.
#include <immintrin.h>

#include <algorithm>
#include <limits>

#include "kernels_impl.hpp"

namespace maxbandit::kernels::avx2 {
namespace {

double horizontal_sum(__m256d v) {
  const __m128d lo = _mm256_castpd256_pd128(v);
  const __m128d hi = _mm256_extractf128_pd(v, 1);
  const __m128d pair = _mm_add_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_add_sd(pair, _mm_unpackhi_pd(pair, pair)));
}

double horizontal_max(__m256d v) {
  const __m128d lo = _mm256_castpd256_pd128(v);
  const __m128d hi = _mm256_extractf128_pd(v, 1);
  const __m128d pair = _mm_max_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_max_sd(pair, _mm_unpackhi_pd(pair, pair)));
}

}  // namespace

Moments excess_moments(std::span<const double> x, double floor) {
  const std::size_t n = x.size();
  const __m256d f = _mm256_set1_pd(floor);
  const __m256d zero = _mm256_setzero_pd();
  __m256d s0 = zero, s1 = zero, q0 = zero, q1 = zero;
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    const __m256d e0 = _mm256_max_pd(_mm256_sub_pd(_mm256_loadu_pd(x.data() + i), f), zero);
    const __m256d e1 = _mm256_max_pd(_mm256_sub_pd(_mm256_loadu_pd(x.data() + i + 4), f), zero);
    s0 = _mm256_add_pd(s0, e0);
    s1 = _mm256_add_pd(s1, e1);
    q0 = _mm256_add_pd(q0, _mm256_mul_pd(e0, e0));
    q1 = _mm256_add_pd(q1, _mm256_mul_pd(e1, e1));
  }
  for (; i + 4 <= n; i += 4) {
    const __m256d e = _mm256_max_pd(_mm256_sub_pd(_mm256_loadu_pd(x.data() + i), f), zero);
    s0 = _mm256_add_pd(s0, e);
    q0 = _mm256_add_pd(q0, _mm256_mul_pd(e, e));
  }
  Moments m{horizontal_sum(_mm256_add_pd(s0, s1)), horizontal_sum(_mm256_add_pd(q0, q1))};
  for (; i < n; ++i) {
    const double e = std::max(x[i] - floor, 0.0);
    m.sum += e;
    m.sum_sq += e * e;
  }
  return m;
}

double max_value(std::span<const double> x) {
  const std::size_t n = x.size();
  __m256d best = _mm256_set1_pd(-std::numeric_limits<double>::infinity());
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    best = _mm256_max_pd(best, _mm256_loadu_pd(x.data() + i));
  }
  double result = horizontal_max(best);
  for (; i < n; ++i) result = std::max(result, x[i]);
  return result;
}

void accumulate_moments(std::span<double> sum, std::span<double> sum_sq,
                        std::span<const double> x) {
  const std::size_t n = x.size();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d v = _mm256_loadu_pd(x.data() + i);
    _mm256_storeu_pd(sum.data() + i, _mm256_add_pd(_mm256_loadu_pd(sum.data() + i), v));
    _mm256_storeu_pd(sum_sq.data() + i,
                     _mm256_add_pd(_mm256_loadu_pd(sum_sq.data() + i), _mm256_mul_pd(v, v)));
  }
  for (; i < n; ++i) {
    sum[i] += x[i];
    sum_sq[i] += x[i] * x[i];
  }
}

void accumulate_matches(std::span<double> hits, std::span<const std::int32_t> labels,
                        std::int32_t target) {
  const std::size_t n = labels.size();
  const __m128i t = _mm_set1_epi32(target);
  const __m256d one = _mm256_set1_pd(1.0);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m128i l = _mm_loadu_si128(reinterpret_cast<const __m128i*>(labels.data() + i));
    // Widen the 32-bit lane mask to 64-bit lanes.
    const __m256i mask = _mm256_cvtepi32_epi64(_mm_cmpeq_epi32(l, t));
    const __m256d add = _mm256_and_pd(_mm256_castsi256_pd(mask), one);
    _mm256_storeu_pd(hits.data() + i, _mm256_add_pd(_mm256_loadu_pd(hits.data() + i), add));
  }
  for (; i < n; ++i) hits[i] += labels[i] == target ? 1.0 : 0.0;
}

}  // namespace maxbandit::kernels::avx2

#pragma once

#include <cstdint>
#include <span>

#include "maxbandit/kernels.hpp"

namespace maxbandit::kernels::scalar {

Moments excess_moments(std::span<const double> x, double floor);
double max_value(std::span<const double> x);
void accumulate_moments(std::span<double> sum, std::span<double> sum_sq,
                        std::span<const double> x);
void accumulate_matches(std::span<double> hits, std::span<const std::int32_t> labels,
                        std::int32_t target);

}  // namespace maxbandit::kernels::scalar

#if defined(MAXBANDIT_HAVE_AVX2)
namespace maxbandit::kernels::avx2 {

Moments excess_moments(std::span<const double> x, double floor);
double max_value(std::span<const double> x);
void accumulate_moments(std::span<double> sum, std::span<double> sum_sq,
                        std::span<const double> x);
void accumulate_matches(std::span<double> hits, std::span<const std::int32_t> labels,
                        std::int32_t target);

}  // namespace maxbandit::kernels::avx2
#endif

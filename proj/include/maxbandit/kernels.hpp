#pragma once

// Data-parallel inner loops of the Monte Carlo estimators and the transition
// aggregation. Every kernel has a scalar reference implementation; SIMD
// variants are selected once at runtime from the CPU's capabilities.
//
// Element-wise kernels (accumulate_*) are bit-identical across variants.
// Reductions (excess_moments) reassociate the sum and agree to rounding.

#include <cstdint>
#include <span>
#include <string_view>

namespace maxbandit::kernels {

enum class Isa { scalar, avx2 };

std::string_view isa_name(Isa isa);

/// Best variant supported by this CPU and build. Setting the environment
/// variable MAXBANDIT_FORCE_SCALAR selects the scalar reference.
Isa active_isa();

/// True when `isa` can run on this machine.
bool isa_supported(Isa isa);

struct Moments {
  double sum = 0.0;
  double sum_sq = 0.0;
};

/// Sum and sum of squares of max(x_i - floor, 0).
Moments excess_moments(std::span<const double> x, double floor);
Moments excess_moments(Isa isa, std::span<const double> x, double floor);

/// Largest element; -inf for an empty span.
double max_value(std::span<const double> x);
double max_value(Isa isa, std::span<const double> x);

/// sum[i] += x[i]; sum_sq[i] += x[i] * x[i].
void accumulate_moments(std::span<double> sum, std::span<double> sum_sq,
                        std::span<const double> x);
void accumulate_moments(Isa isa, std::span<double> sum, std::span<double> sum_sq,
                        std::span<const double> x);

/// hits[i] += (labels[i] == target) ? 1 : 0.
void accumulate_matches(std::span<double> hits, std::span<const std::int32_t> labels,
                        std::int32_t target);
void accumulate_matches(Isa isa, std::span<double> hits, std::span<const std::int32_t> labels,
                        std::int32_t target);

}  // namespace maxbandit::kernels

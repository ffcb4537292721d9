#include "maxbandit/kernels.hpp"

#include <cstdlib>
#include <stdexcept>
#include <string>

#include "kernels_impl.hpp"

namespace maxbandit::kernels {
namespace {

Isa detect() {
  if (std::getenv("MAXBANDIT_FORCE_SCALAR") != nullptr) return Isa::scalar;
  if (isa_supported(Isa::avx2)) return Isa::avx2;
  return Isa::scalar;
}

void check_sizes(std::size_t a, std::size_t b) {
  if (a != b) throw std::invalid_argument("kernels: span size mismatch");
}

[[noreturn]] void unsupported(Isa isa) {
  throw std::invalid_argument("kernels: instruction set " + std::string(isa_name(isa)) +
                              " is not available");
}

}  // namespace

std::string_view isa_name(Isa isa) {
  switch (isa) {
    case Isa::scalar: return "scalar";
    case Isa::avx2: return "avx2";
  }
  return "?";
}

bool isa_supported(Isa isa) {
  switch (isa) {
    case Isa::scalar: return true;
    case Isa::avx2:
#if defined(MAXBANDIT_HAVE_AVX2)
      return __builtin_cpu_supports("avx2");
#else
      return false;
#endif
  }
  return false;
}

Isa active_isa() {
  static const Isa isa = detect();
  return isa;
}

Moments excess_moments(std::span<const double> x, double floor) {
  return excess_moments(active_isa(), x, floor);
}

Moments excess_moments(Isa isa, std::span<const double> x, double floor) {
  switch (isa) {
    case Isa::scalar: return scalar::excess_moments(x, floor);
    case Isa::avx2:
#if defined(MAXBANDIT_HAVE_AVX2)
      if (isa_supported(isa)) return avx2::excess_moments(x, floor);
#endif
      break;
  }
  unsupported(isa);
}

double max_value(std::span<const double> x) { return max_value(active_isa(), x); }

double max_value(Isa isa, std::span<const double> x) {
  switch (isa) {
    case Isa::scalar: return scalar::max_value(x);
    case Isa::avx2:
#if defined(MAXBANDIT_HAVE_AVX2)
      if (isa_supported(isa)) return avx2::max_value(x);
#endif
      break;
  }
  unsupported(isa);
}

void accumulate_moments(std::span<double> sum, std::span<double> sum_sq,
                        std::span<const double> x) {
  accumulate_moments(active_isa(), sum, sum_sq, x);
}

void accumulate_moments(Isa isa, std::span<double> sum, std::span<double> sum_sq,
                        std::span<const double> x) {
  check_sizes(sum.size(), x.size());
  check_sizes(sum_sq.size(), x.size());
  switch (isa) {
    case Isa::scalar: return scalar::accumulate_moments(sum, sum_sq, x);
    case Isa::avx2:
#if defined(MAXBANDIT_HAVE_AVX2)
      if (isa_supported(isa)) return avx2::accumulate_moments(sum, sum_sq, x);
#endif
      break;
  }
  unsupported(isa);
}

void accumulate_matches(std::span<double> hits, std::span<const std::int32_t> labels,
                        std::int32_t target) {
  accumulate_matches(active_isa(), hits, labels, target);
}

void accumulate_matches(Isa isa, std::span<double> hits, std::span<const std::int32_t> labels,
                        std::int32_t target) {
  check_sizes(hits.size(), labels.size());
  switch (isa) {
    case Isa::scalar: return scalar::accumulate_matches(hits, labels, target);
    case Isa::avx2:
#if defined(MAXBANDIT_HAVE_AVX2)
      if (isa_supported(isa)) return avx2::accumulate_matches(hits, labels, target);
#endif
      break;
  }
  unsupported(isa);
}

}  // namespace maxbandit::kernels

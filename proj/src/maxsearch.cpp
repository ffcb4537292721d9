#include "maxbandit/maxsearch.hpp"

#include <numbers>
#include <stdexcept>

#include "index_buffer.hpp"
#include "maxbandit/special_functions.hpp"

namespace maxbandit {

ExplorationParam::ExplorationParam(double value) : value_(value) {
  if (!(value > 0.0) || !std::isfinite(value)) {
    throw std::invalid_argument("exploration parameter c must be positive and finite");
  }
}

double pseudo_ucb_beta_limit() {
  return std::numbers::sqrt2 - std::sqrt(2.0 - std::numbers::ln2);
}

PseudoUcbTerms pseudo_ucb_terms(const SharedRecord& shared, const ArmRecord& arm,
                                ExplorationParam c) {
  PseudoUcbTerms terms;
  if (arm.count == 0 || shared.total < 2) {
    return terms;
  }
  const double n = static_cast<double>(arm.count);
  terms.beta = c.value() * std::sqrt(std::log(static_cast<double>(shared.total)) / n);
  terms.gamma = -terms.beta * terms.beta + 2.0 * std::numbers::sqrt2 * terms.beta;
  // gamma(beta) turns back below ln 2 for beta > sqrt(2) + sqrt(2 - ln 2); that
  // branch is outside the confidence statement, so it stays unexplored as well.
  if (terms.gamma > std::numbers::ln2 || terms.beta >= std::numbers::sqrt2) {
    return terms;
  }
  terms.mean = arm.sum / n;
  double raw = arm.sum_sq / n - terms.mean * terms.mean;
  if (raw < 0.0) raw = 0.0;
  terms.spread = raw / (2.0 * (std::numbers::ln2 - terms.gamma));
  if (terms.spread == 0.0) {
    terms.index = 0.0;
    return terms;
  }
  const double width = std::sqrt(2.0 * terms.spread);
  terms.index = std::sqrt(2.0 * std::numbers::pi * terms.spread) *
                erfc((shared.best - terms.mean) / width);
  return terms;
}

double pseudo_ucb_index(const SharedRecord& shared, const ArmRecord& arm, ExplorationParam c) {
  return pseudo_ucb_terms(shared, arm, c).index;
}

std::size_t maxsearch_select(const SharedRecord& shared, std::span<const ArmRecord> arms,
                             ExplorationParam c, Rng& rng) {
  if (arms.empty()) {
    throw std::invalid_argument("maxsearch_select: no arms");
  }
  detail::IndexBuffer index(arms.size());
  for (std::size_t k = 0; k < arms.size(); ++k) {
    index[k] = pseudo_ucb_index(shared, arms[k], c);
  }
  return argmax_random_ties(index.span(), rng);
}

}  // namespace maxbandit

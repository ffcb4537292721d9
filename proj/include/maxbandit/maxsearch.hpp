#pragma once

#include <cmath>
#include <span>

#include "maxbandit/records.hpp"

namespace maxbandit {

/// Exploration weight c of the MaxSearch index. Always positive.
class ExplorationParam {
 public:
  /// Recommended weight 1/sqrt(13.613): keeps gamma < ln 2 once n > ln(nu).
  static ExplorationParam recommended() { return ExplorationParam(1.0 / std::sqrt(13.613)); }

  explicit ExplorationParam(double value);
  double value() const { return value_; }

 private:
  double value_;
};

/// Intermediate quantities of the pseudo-UCB index, exposed for tests and reports.
struct PseudoUcbTerms {
  double beta = 0.0;      ///< c * sqrt(ln(nu) / n)
  double gamma = 0.0;     ///< -beta^2 + 2 sqrt(2) beta
  double mean = 0.0;      ///< R / n
  double spread = 0.0;    ///< inflated variance proxy (Q/n - mean^2) / (2 (ln 2 - gamma))
  double index = kInfinity;
};

/// Smallest beta at which gamma reaches ln 2: sqrt(2) - sqrt(2 - ln 2).
double pseudo_ucb_beta_limit();

/// Pseudo-UCB of the expected improvement of the best reward for one arm.
///
/// Returns +inf while the arm is unexplored (n = 0 or nu < 2) or while the
/// confidence radius is too wide for the variance proxy to be bounded
/// (beta >= pseudo_ucb_beta_limit()). Otherwise
///   z = sqrt(2 pi s^2) erfc((r_max - m) / sqrt(2 s^2)),  z >= 0.
PseudoUcbTerms pseudo_ucb_terms(const SharedRecord& shared, const ArmRecord& arm,
                                ExplorationParam c);

double pseudo_ucb_index(const SharedRecord& shared, const ArmRecord& arm, ExplorationParam c);

/// MaxSearch: argmax of the pseudo-UCB index, ties broken uniformly via `rng`.
std::size_t maxsearch_select(const SharedRecord& shared, std::span<const ArmRecord> arms,
                             ExplorationParam c, Rng& rng);

}  // namespace maxbandit

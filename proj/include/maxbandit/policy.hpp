#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "maxbandit/baselines.hpp"
#include "maxbandit/maxsearch.hpp"
#include "maxbandit/records.hpp"

namespace maxbandit {

enum class PolicyKind { max_search, threshold_ascent, robust_ucb_max, sp_ucb, ucbe, ucb, random };

inline constexpr PolicyKind kAllPolicies[] = {
    PolicyKind::max_search, PolicyKind::threshold_ascent, PolicyKind::robust_ucb_max,
    PolicyKind::sp_ucb,     PolicyKind::ucbe,             PolicyKind::ucb,
    PolicyKind::random};

std::string_view policy_name(PolicyKind kind);
/// Accepts the names returned by policy_name(). Throws std::invalid_argument.
PolicyKind parse_policy(std::string_view name);

/// ThresholdAscent and RobustUCBMax need raw rewards, so they only run on flat bandits.
bool needs_reward_log(PolicyKind kind);

struct PolicyConfig {
  PolicyKind kind = PolicyKind::max_search;
  double c = 0.0;              ///< exploration weight; meaning depends on kind
  double sp_ucb_d = 32.0;
  double epsilon = 0.4;        ///< RobustUCBMax
  std::size_t rank = 100;      ///< ThresholdAscent s, RobustUCBMax u-rank
  std::size_t warmup = 10;     ///< P for spUCB, UCBE, UCB

  /// Hyperparameters used in the comparison experiments:
  /// MaxSearch c = 1/sqrt(13.613), spUCB c = 0.1 and D = 32, UCBE and UCB c = 1,
  /// ThresholdAscent s = 100, RobustUCBMax epsilon = 0.4.
  static PolicyConfig defaults(PolicyKind kind);
};

/// Statistics visible to a record-based selection rule at one decision point.
struct RecordView {
  std::span<const ArmRecord> arms;
  SharedRecord shared;
  std::int64_t step = 1;               ///< 1-based index of the selection being made
  const WarmupSigma* warmup = nullptr;  ///< required by spUCB, UCBE, UCB
};

/// Selection for every policy that needs only ArmRecords. Throws
/// std::invalid_argument for ThresholdAscent and RobustUCBMax.
std::size_t select_from_records(const PolicyConfig& config, const RecordView& view, Rng& rng);

/// One flat K-armed bandit: records, reward log and the policy state on top of them.
class Bandit {
 public:
  Bandit(std::size_t arms, PolicyConfig config, std::int64_t horizon);

  std::size_t select(Rng& rng) const;
  void observe(std::size_t arm, double reward);

  std::span<const ArmRecord> arms() const { return arms_; }
  const SharedRecord& shared() const { return shared_; }
  const RewardLog& log() const { return log_; }
  const WarmupSigma& warmup() const { return warmup_; }
  const PolicyConfig& config() const { return config_; }

 private:
  PolicyConfig config_;
  std::int64_t horizon_;
  std::vector<ArmRecord> arms_;
  SharedRecord shared_;
  RewardLog log_;
  WarmupSigma warmup_;
  std::optional<RankThreshold> ranks_;
};

}  // namespace maxbandit

#include "maxbandit/policy.hpp"

#include <cmath>
#include <stdexcept>

namespace maxbandit {

std::string_view policy_name(PolicyKind kind) {
  switch (kind) {
    case PolicyKind::max_search: return "maxsearch";
    case PolicyKind::threshold_ascent: return "threshold-ascent";
    case PolicyKind::robust_ucb_max: return "robust-ucb-max";
    case PolicyKind::sp_ucb: return "spucb";
    case PolicyKind::ucbe: return "ucbe";
    case PolicyKind::ucb: return "ucb";
    case PolicyKind::random: return "random";
  }
  return "?";
}

PolicyKind parse_policy(std::string_view name) {
  for (PolicyKind kind : kAllPolicies) {
    if (policy_name(kind) == name) return kind;
  }
  throw std::invalid_argument("unknown policy '" + std::string(name) + "'");
}

bool needs_reward_log(PolicyKind kind) {
  return kind == PolicyKind::threshold_ascent || kind == PolicyKind::robust_ucb_max;
}

PolicyConfig PolicyConfig::defaults(PolicyKind kind) {
  PolicyConfig config;
  config.kind = kind;
  switch (kind) {
    case PolicyKind::max_search: config.c = ExplorationParam::recommended().value(); break;
    case PolicyKind::sp_ucb: config.c = 0.1; break;
    case PolicyKind::ucbe:
    case PolicyKind::ucb: config.c = 1.0; break;
    default: break;
  }
  return config;
}

std::size_t select_from_records(const PolicyConfig& config, const RecordView& view, Rng& rng) {
  if (view.arms.empty()) throw std::invalid_argument("select_from_records: no arms");
  auto need_warmup = [&]() -> const WarmupSigma& {
    if (view.warmup == nullptr) {
      throw std::invalid_argument("select_from_records: policy needs a warm-up sigma");
    }
    return *view.warmup;
  };
  switch (config.kind) {
    case PolicyKind::max_search:
      return maxsearch_select(view.shared, view.arms, ExplorationParam(config.c), rng);
    case PolicyKind::sp_ucb:
      return sp_ucb_select(view.shared, view.arms, need_warmup(), view.step,
                           SpUcbParams{config.c, config.sp_ucb_d}, rng);
    case PolicyKind::ucbe:
      return ucbe_select(view.shared, view.arms, need_warmup(), view.step, config.c, rng);
    case PolicyKind::ucb:
      return ucb_select(view.shared, view.arms, need_warmup(), view.step, config.c, rng);
    case PolicyKind::random:
      return random_select(view.arms.size(), rng);
    case PolicyKind::threshold_ascent:
    case PolicyKind::robust_ucb_max:
      break;
  }
  throw std::invalid_argument(std::string(policy_name(config.kind)) +
                              " needs the raw reward log and cannot run on records alone");
}

Bandit::Bandit(std::size_t arms, PolicyConfig config, std::int64_t horizon)
    : config_(config),
      horizon_(horizon),
      arms_(arms),
      log_(arms),
      warmup_(config.warmup) {
  if (arms == 0) throw std::invalid_argument("Bandit: no arms");
  shared_.arms = arms;
  if (needs_reward_log(config.kind)) ranks_.emplace(arms, config.rank);
}

std::size_t Bandit::select(Rng& rng) const {
  switch (config_.kind) {
    case PolicyKind::threshold_ascent:
      return threshold_ascent_select(
          *ranks_, arms_, shared_,
          ThresholdAscentParams{static_cast<double>(horizon_), config_.rank}, rng);
    case PolicyKind::robust_ucb_max:
      return robust_ucb_max_select(*ranks_, log_, arms_, shared_,
                                   RobustUcbMaxParams{config_.epsilon, config_.rank}, rng);
    default:
      return select_from_records(config_, RecordView{arms_, shared_, shared_.total + 1, &warmup_},
                                 rng);
  }
}

void Bandit::observe(std::size_t arm, double reward) {
  update(shared_, arms_, arm, reward);
  if (needs_reward_log(config_.kind)) {
    log_.add(arm, reward);
    ranks_->add(arm, reward);
  }
  warmup_.observe(reward);
}

}  // namespace maxbandit

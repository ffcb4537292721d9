#include "maxbandit/mcts.hpp"

#include <utility>

namespace maxbandit {

TreeNode::TreeNode(std::size_t legal) : arms(legal), children(legal) { shared.arms = legal; }

SearchTree::SearchTree(const Grammar& grammar, PolicyConfig policy, SearchOptions options)
    : grammar_(grammar), policy_(policy), options_(options), warmup_(policy.warmup) {
  if (needs_reward_log(policy.kind)) {
    throw std::invalid_argument("policy " + std::string(policy_name(policy.kind)) +
                                " needs raw reward logs and cannot run inside tree search");
  }
  const auto start = grammar_.start();
  root_ = std::make_unique<TreeNode>(grammar_.legal_productions(start).size());
}

Path SearchTree::descend(Rng& rng, DerivationState& state) {
  state = grammar_.start();
  Path path;
  TreeNode* node = root_.get();
  const std::int64_t step = iterations_ + 1;
  while (true) {
    const auto legal = grammar_.legal_productions(state);
    RecordView view;
    view.arms = node->arms;
    view.shared = node->shared;
    if (!options_.per_node_best) view.shared.best = best_;
    view.step = step;
    view.warmup = &warmup_;
    const std::size_t k = legal.size() == 1 ? 0 : select_from_records(policy_, view, rng);
    path.push_back({node, k});
    grammar_.apply(state, legal[k]);
    if (state.complete()) break;
    auto& child = node->children[k];
    if (!child) {
      child = std::make_unique<TreeNode>(grammar_.legal_productions(state).size());
      ++nodes_;
    }
    node = child.get();
  }
  return path;
}

void SearchTree::backpropagate(const Path& path, double reward) {
  for (const auto& step : path) update(step.node->shared, step.node->arms, step.choice, reward);
  if (reward > best_) best_ = reward;
  warmup_.observe(reward);
  ++iterations_;
}

std::vector<std::size_t> path_choices(const Path& path) {
  std::vector<std::size_t> out;
  out.reserve(path.size());
  for (const auto& step : path) out.push_back(step.choice);
  return out;
}

EvaluationError::EvaluationError(std::string smiles, const std::string& message)
    : std::runtime_error("evaluation failed for " + smiles + ": " + message),
      smiles_(std::move(smiles)) {}

SearchResult search(const Grammar& grammar, const Evaluator& evaluator, const PolicyConfig& policy,
                    std::int64_t iterations, std::uint64_t seed, SearchOptions options,
                    const IterationHook& hook) {
  if (iterations < 1) throw std::invalid_argument("search: iterations must be at least 1");
  SearchTree tree(grammar, policy, options);
  Rng rng = make_rng(seed, 1);
  SearchResult result;
  result.trajectory.arms.reserve(static_cast<std::size_t>(iterations));
  result.trajectory.rewards.reserve(static_cast<std::size_t>(iterations));
  result.trajectory.running_max.reserve(static_cast<std::size_t>(iterations));
  DerivationState state = grammar.start();
  for (std::int64_t t = 0; t < iterations; ++t) {
    const Path path = tree.descend(rng, state);
    const Molecule mol = grammar.finalize(state);
    double reward = 0.0;
    try {
      reward = evaluator(mol);
    } catch (const std::exception& e) {
      throw EvaluationError(mol.smiles, e.what());
    }
    tree.backpropagate(path, reward);
    result.trajectory.push(-1, reward);
    if (reward > result.best_reward) {
      result.best_reward = reward;
      result.best_smiles = mol.smiles;
    }
    if (hook) hook(path_choices(path), reward);
  }
  result.nodes = tree.node_count();
  return result;
}

}  // namespace maxbandit

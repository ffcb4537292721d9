#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "maxbandit/baselines.hpp"
#include "maxbandit/grammar.hpp"
#include "maxbandit/policy.hpp"
#include "maxbandit/records.hpp"
#include "maxbandit/synthetic.hpp"

namespace maxbandit {

/// One decision point of the derivation tree. Children are materialized on
/// first visit; completed derivations have no node.
struct TreeNode {
  std::vector<ArmRecord> arms;                    ///< per legal production, grammar order
  std::vector<std::unique_ptr<TreeNode>> children;
  SharedRecord shared;                            ///< total = visits through this node

  explicit TreeNode(std::size_t legal);
};

struct PathStep {
  TreeNode* node;
  std::size_t choice;
};

using Path = std::vector<PathStep>;

struct SearchOptions {
  /// Use each node's own best reward as r_max instead of the run's incumbent.
  bool per_node_best = false;
};

class SearchTree {
 public:
  SearchTree(const Grammar& grammar, PolicyConfig policy, SearchOptions options = {});

  TreeNode& root() { return *root_; }
  const TreeNode& root_node() const { return *root_; }

  /// Walks from the root until the derivation is complete, choosing at every
  /// node with the policy. `state` receives the completed derivation.
  Path descend(Rng& rng, DerivationState& state);

  /// Adds `reward` to every (node, choice) on `path` and to the incumbent.
  void backpropagate(const Path& path, double reward);

  double best() const { return best_; }
  std::int64_t iterations() const { return iterations_; }
  std::size_t node_count() const { return nodes_; }
  const Grammar& grammar() const { return grammar_; }

 private:
  const Grammar& grammar_;
  PolicyConfig policy_;
  SearchOptions options_;
  std::unique_ptr<TreeNode> root_;
  WarmupSigma warmup_;
  double best_ = -kInfinity;
  std::int64_t iterations_ = 0;
  std::size_t nodes_ = 1;
};

/// Choice sequence of a path, for logs and audits.
std::vector<std::size_t> path_choices(const Path& path);

using Evaluator = std::function<double(const Molecule&)>;

/// Raised when the reward function fails on a generated molecule.
class EvaluationError : public std::runtime_error {
 public:
  EvaluationError(std::string smiles, const std::string& message);
  const std::string& smiles() const { return smiles_; }

 private:
  std::string smiles_;
};

struct SearchResult {
  RunTrajectory trajectory;   ///< arms are -1 throughout
  std::string best_smiles;
  double best_reward = -kInfinity;
  std::size_t nodes = 0;
};

/// Called after every iteration with the choice sequence and reward.
using IterationHook = std::function<void(const std::vector<std::size_t>& choices, double reward)>;

/// T iterations of descend, finalize, evaluate, backpropagate. Throws
/// std::invalid_argument for policies that need raw reward logs.
SearchResult search(const Grammar& grammar, const Evaluator& evaluator, const PolicyConfig& policy,
                    std::int64_t iterations, std::uint64_t seed, SearchOptions options = {},
                    const IterationHook& hook = {});

}  // namespace maxbandit

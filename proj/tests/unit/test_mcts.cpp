#include <doctest.h>

#include <cmath>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "maxbandit/mcts.hpp"
#include "maxbandit/properties.hpp"

using namespace maxbandit;

namespace {

double tb(const Molecule& m) { return evaluate(Property::boiling_point, m.graph); }

struct LoggedRun {
  std::vector<std::vector<std::size_t>> paths;
  std::vector<double> rewards;
  std::vector<std::string> smiles;
};

LoggedRun drive(SearchTree& tree, const Grammar& g, int iterations, std::uint64_t seed) {
  LoggedRun log;
  Rng rng(seed);
  DerivationState state = g.start();
  for (int t = 0; t < iterations; ++t) {
    const auto path = tree.descend(rng, state);
    const auto mol = g.finalize(state);
    const double r = tb(mol);
    tree.backpropagate(path, r);
    log.paths.push_back(path_choices(path));
    log.rewards.push_back(r);
    log.smiles.push_back(mol.smiles);
  }
  return log;
}

// Recomputes every node's statistics from the (path, reward) log and compares.
void audit(const TreeNode& node, const Grammar& g, const DerivationState& state, const LoggedRun& log,
           std::vector<std::size_t>& prefix, std::size_t& nodes) {
  ++nodes;
  const auto legal = g.legal_productions(state);
  REQUIRE(node.arms.size() == legal.size());
  REQUIRE(node.children.size() == legal.size());
  REQUIRE(node.shared.arms == legal.size());
  std::vector<ArmRecord> expect(legal.size());
  for (std::size_t i = 0; i < log.paths.size(); ++i) {
    const auto& p = log.paths[i];
    if (p.size() <= prefix.size() || !std::equal(prefix.begin(), prefix.end(), p.begin())) continue;
    expect[p[prefix.size()]].add(log.rewards[i]);
  }
  std::int64_t total = 0;
  for (std::size_t k = 0; k < legal.size(); ++k) {
    REQUIRE(node.arms[k] == expect[k]);
    REQUIRE(node.arms[k].sum_sq * node.arms[k].count >=
            node.arms[k].sum * node.arms[k].sum * (1 - 1e-9));
    total += node.arms[k].count;
  }
  REQUIRE(node.shared.total == total);
  for (std::size_t k = 0; k < legal.size(); ++k) {
    auto next = g.apply_production(state, legal[k]);
    if (!node.children[k]) continue;
    REQUIRE(!next.complete());
    REQUIRE(node.arms[k].count > 0);
    prefix.push_back(k);
    audit(*node.children[k], g, next, log, prefix, nodes);
    prefix.pop_back();
  }
}

}  // namespace

TEST_CASE("backpropagation along one path and a shared prefix") {
  const auto g = Grammar::standard();
  SearchTree tree(g, PolicyConfig::defaults(PolicyKind::max_search));
  Rng rng(1);
  DerivationState state = g.start();
  const auto p1 = tree.descend(rng, state);
  tree.backpropagate(p1, 2.0);
  for (const auto& step : p1) {
    CHECK(step.node->arms[step.choice] == ArmRecord{1, 2.0, 4.0});
    CHECK(step.node->shared.total == 1);
  }
  CHECK(tree.best() == 2.0);
  const auto p2 = tree.descend(rng, state);
  tree.backpropagate(p2, -1.0);
  CHECK(tree.root().shared.total == 2);
  if (p1.front().choice == p2.front().choice) {
    CHECK(tree.root().arms[p1.front().choice] == ArmRecord{2, 1.0, 5.0});
  }
  CHECK(tree.best() == 2.0);
  CHECK(tree.iterations() == 2);
}

TEST_CASE("fresh tree descends uniformly at the root") {
  const auto g = Grammar::standard();
  std::vector<int> hits(4);
  for (std::uint64_t s = 0; s < 2000; ++s) {
    SearchTree tree(g, PolicyConfig::defaults(PolicyKind::max_search));
    Rng rng(s);
    DerivationState state = g.start();
    ++hits[tree.descend(rng, state).front().choice];
  }
  for (int h : hits) CHECK(std::abs(h - 500) < 90);
}

TEST_CASE("property: full-tree audit against the rollout log") {
  const auto g = Grammar::standard();
  for (auto kind : {PolicyKind::max_search, PolicyKind::ucb, PolicyKind::random}) {
    SearchTree tree(g, PolicyConfig::defaults(kind));
    const auto log = drive(tree, g, 1000, 42);
    std::vector<std::size_t> prefix;
    std::size_t nodes = 0;
    audit(tree.root_node(), g, g.start(), log, prefix, nodes);
    CHECK(nodes == tree.node_count());

    std::size_t selections = 0;
    std::set<std::vector<std::size_t>> proper_prefixes;
    std::map<std::vector<std::size_t>, std::string> by_path;
    std::map<std::string, std::vector<std::size_t>> by_smiles;
    for (std::size_t i = 0; i < log.paths.size(); ++i) {
      const auto& p = log.paths[i];
      selections += p.size();
      for (std::size_t len = 0; len < p.size(); ++len) proper_prefixes.insert({p.begin(), p.begin() + len});
      auto [it, fresh] = by_path.emplace(p, log.smiles[i]);
      CHECK(it->second == log.smiles[i]);
      auto [jt, fresh_s] = by_smiles.emplace(log.smiles[i], p);
      CHECK(jt->second == p);
    }
    CHECK(tree.node_count() == proper_prefixes.size());
    CHECK(tree.node_count() <= selections + 1);
    double best = -INFINITY;
    for (double r : log.rewards) best = std::max(best, r);
    CHECK(tree.best() == best);
  }
}

TEST_CASE("search is deterministic for a seed") {
  const auto g = Grammar::standard();
  const auto config = PolicyConfig::defaults(PolicyKind::max_search);
  const auto a = search(g, tb, config, 500, 9);
  const auto b = search(g, tb, config, 500, 9);
  CHECK(a.trajectory.rewards == b.trajectory.rewards);
  CHECK(a.best_smiles == b.best_smiles);
  CHECK(a.nodes == b.nodes);
  const auto c = search(g, tb, config, 500, 10);
  CHECK(c.trajectory.rewards != a.trajectory.rewards);
  SearchOptions per_node;
  per_node.per_node_best = true;
  const auto d = search(g, tb, config, 500, 9, per_node);
  CHECK(d.trajectory.size() == 500);
}

TEST_CASE("single iteration") {
  const auto g = Grammar::standard();
  std::vector<std::size_t> seen;
  double hooked = 0;
  const auto r = search(g, tb, PolicyConfig::defaults(PolicyKind::random), 1, 3, {},
                        [&](const std::vector<std::size_t>& choices, double reward) {
                          seen = choices;
                          hooked = reward;
                        });
  REQUIRE(r.trajectory.size() == 1);
  CHECK(r.trajectory.running_max[0] == r.trajectory.rewards[0]);
  CHECK(r.best_reward == r.trajectory.rewards[0]);
  CHECK(hooked == r.best_reward);
  CHECK_FALSE(seen.empty());
  CHECK(r.trajectory.arms[0] == -1);
  CHECK_THROWS_AS(search(g, tb, PolicyConfig{}, 0, 1), std::invalid_argument);
}

TEST_CASE("evaluation failures carry the molecule") {
  const auto g = Grammar::standard();
  const Evaluator failing = [](const Molecule&) -> double { throw std::domain_error("no value"); };
  try {
    search(g, failing, PolicyConfig::defaults(PolicyKind::random), 5, 1);
    FAIL("expected an exception");
  } catch (const EvaluationError& e) {
    CHECK_FALSE(e.smiles().empty());
    CHECK(std::string(e.what()).find(e.smiles()) != std::string::npos);
  }
}

TEST_CASE("log-based policies are rejected") {
  const auto g = Grammar::standard();
  CHECK_THROWS_AS(SearchTree(g, PolicyConfig::defaults(PolicyKind::threshold_ascent)), std::invalid_argument);
  CHECK_THROWS_AS(search(g, tb, PolicyConfig::defaults(PolicyKind::robust_ucb_max), 10, 1),
                  std::invalid_argument);
}

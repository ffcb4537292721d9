// Command-line driver for the bandit, tree-search and oracle experiments.
#include <CLI11.hpp>

#include <iostream>
#include <string>
#include <vector>

#include "maxbandit/experiment.hpp"
#include "maxbandit/kernels.hpp"

int main(int argc, char** argv) {
  using namespace maxbandit;
  CLI::App app{"Max K-armed bandit experiments"};

  std::string config_path, mode, problem, property, aggregate, out;
  std::vector<std::string> policies;
  double c = 0.0;
  std::int64_t runs = 0, horizon = 0;
  std::uint64_t seed = 0;
  int example = 0;
  unsigned jobs = 0;
  bool plot = false, per_node_best = false, no_resume = false, quiet = false;

  app.add_option("--config", config_path, "JSON config; flags given on the command line override it");
  auto* mode_opt = app.add_option("--mode", mode, "synthetic | mcts | oracle");
  auto* problem_opt = app.add_option("--problem", problem, "easy | difficult | unfavorable");
  auto* property_opt = app.add_option("--property", property, "tb | pc | eta | tpsa");
  auto* policy_opt = app.add_option("--policy", policies,
                                    "maxsearch threshold-ascent robust-ucb-max spucb ucbe ucb random, "
                                    "or 'all'")->delimiter(',');
  auto* c_opt = app.add_option("--c", c, "exploration weight for every policy");
  auto* runs_opt = app.add_option("--runs", runs, "independent runs (default 100)");
  auto* horizon_opt = app.add_option("--horizon", horizon, "selections per run (default 10000)");
  auto* seed_opt = app.add_option("--seed", seed, "master seed (default 1)");
  auto* out_opt = app.add_option("--out", out, "output directory (default out)");
  auto* agg_opt = app.add_option("--aggregate", aggregate, "mean-stderr | median-quantile");
  auto* example_opt = app.add_option("--example", example, "oracle mode: example 1 or 2");
  auto* jobs_opt = app.add_option("--jobs", jobs, "worker threads (default: all cores)");
  auto* plot_opt = app.add_flag("--plot", plot, "write plot.svg");
  auto* node_opt = app.add_flag("--per-node-best", per_node_best, "mcts: per-node r_max");
  app.add_flag("--no-resume", no_resume, "recompute runs even if complete run files exist");
  app.add_flag("--quiet", quiet, "no progress output");

  CLI11_PARSE(app, argc, argv);

  try {
    ExperimentConfig cfg;
    if (!config_path.empty()) cfg = load_config(config_path);
    if (*mode_opt) cfg.mode = parse_mode(mode);
    if (*problem_opt) cfg.problem = parse_problem(problem);
    if (*property_opt) cfg.property = parse_property(property);
    if (*policy_opt) {
      cfg.policies.clear();
      for (const auto& p : policies) {
        if (p == "all") {
          for (PolicyKind k : kAllPolicies) {
            if (cfg.mode != Mode::mcts || !needs_reward_log(k)) cfg.policies.push_back(k);
          }
        } else {
          cfg.policies.push_back(parse_policy(p));
        }
      }
    }
    if (*c_opt) cfg.c = c;
    if (*runs_opt) cfg.runs = runs;
    if (*horizon_opt) cfg.horizon = horizon;
    if (*seed_opt) cfg.seed = seed;
    if (*out_opt) cfg.out = out;
    if (*agg_opt) cfg.aggregate = parse_aggregation(aggregate);
    if (*example_opt) cfg.example = example;
    if (*jobs_opt) cfg.jobs = jobs;
    if (*plot_opt) cfg.plot = plot;
    if (*node_opt) cfg.per_node_best = per_node_best;
    if (no_resume) cfg.resume = false;

    const auto summary = run_experiment(cfg, quiet ? nullptr : &std::cerr);
    if (cfg.mode == Mode::oracle) {
      if (quiet) std::cout << summary.report;
      return 0;
    }
    for (const auto& p : summary.policies) {
      std::cout << policy_name(p.kind) << ": final max " << format_double(p.final_max);
      if (p.final_ratio) std::cout << ", optimal-arm ratio " << format_double(*p.final_ratio);
      if (!p.best_smiles.empty()) {
        std::size_t best = 0;
        for (std::size_t i = 1; i < p.best_rewards.size(); ++i) {
          if (p.best_rewards[i] > p.best_rewards[best]) best = i;
        }
        std::cout << ", best " << p.best_smiles[best];
      }
      std::cout << "\n";
    }
    std::cout << "wrote " << cfg.out << " (" << format_double(summary.wall_seconds) << " s, "
              << kernels::isa_name(kernels::active_isa()) << " kernels)\n";
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}

#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "maxbandit/policy.hpp"
#include "maxbandit/properties.hpp"
#include "maxbandit/synthetic.hpp"

namespace maxbandit {

enum class Mode { synthetic, mcts, oracle };

Mode parse_mode(std::string_view name);
std::string_view mode_name(Mode mode);

struct ExperimentConfig {
  Mode mode = Mode::synthetic;
  ProblemName problem = ProblemName::easy;
  Property property = Property::boiling_point;
  std::vector<PolicyKind> policies{PolicyKind::max_search};
  std::optional<double> c;          ///< overrides every policy's default exploration weight
  std::int64_t runs = 100;
  std::int64_t horizon = 10000;
  std::uint64_t seed = 1;
  std::string out = "out";
  std::optional<Aggregation> aggregate;  ///< default: median-quantile for viscosity, else mean-stderr
  int example = 1;                       ///< oracle mode: 1 or 2
  unsigned jobs = 0;                     ///< 0 = hardware concurrency
  bool plot = false;
  bool per_node_best = false;            ///< mcts: per-node r_max instead of the run's incumbent
  bool resume = true;                    ///< reuse complete per-run files found in `out`

  Aggregation aggregation() const;
  PolicyConfig policy_config(PolicyKind kind) const;
};

/// Reads a JSON object whose keys match the command-line flags. Unknown keys are errors.
ExperimentConfig parse_config_json(std::string_view text, ExperimentConfig base = {});
ExperimentConfig load_config(const std::string& path, ExperimentConfig base = {});

/// Throws std::invalid_argument for out-of-range values and invalid policy/mode pairs.
void validate(const ExperimentConfig& config);

struct PolicyOutcome {
  PolicyKind kind{};
  TransitionSeries series;
  double final_max = 0.0;           ///< mean, or median in median-quantile mode
  std::optional<double> final_ratio;
  std::vector<std::string> best_smiles;  ///< mcts: best molecule of each run
  std::vector<double> best_rewards;
};

struct ExperimentSummary {
  std::vector<PolicyOutcome> policies;
  std::string report;   ///< oracle mode text
  double wall_seconds = 0.0;
};

/// Runs the configured experiment and writes its artifacts under config.out:
///   <policy>/transition.csv, <policy>/runs/*.csv, <policy>/molecules.csv (mcts),
///   summary.json, plot.svg (if requested), report.txt (oracle mode).
ExperimentSummary run_experiment(const ExperimentConfig& config, std::ostream* log = nullptr);

/// Shortest round-trip text of a double.
std::string format_double(double v);

std::string format_csv(const TransitionSeries& series);
void emit_csv(const TransitionSeries& series, const std::string& path);
/// Inverse of format_csv.
TransitionSeries parse_csv(std::string_view text);

struct PlotSeries {
  std::string label;
  const TransitionSeries* series;
};

/// Standalone SVG with the running-max panel and, when any series has a ratio,
/// the optimal-arm ratio panel smoothed over `window` steps.
std::string render_svg(const std::vector<PlotSeries>& series, std::string_view title,
                       std::size_t window = 100);

}  // namespace maxbandit

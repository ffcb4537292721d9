#include "maxbandit/experiment.hpp"

#include <json.hpp>

#include <algorithm>
#include <atomic>
#include <charconv>
#include <chrono>
#include <cmath>
#include <exception>
#include <filesystem>
#include <fstream>
#include <limits>
#include <mutex>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "maxbandit/mcts.hpp"
#include "maxbandit/oracle.hpp"

namespace maxbandit {
namespace fs = std::filesystem;

namespace {

constexpr std::size_t kRatioWindow = 100;

void write_file(const fs::path& path, const std::string& text) {
  fs::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + tmp.string());
    out << text;
    if (!out) throw std::runtime_error("write failed for " + tmp.string());
  }
  fs::rename(tmp, path);
}

double parse_double_field(std::string_view field) {
  if (field == "nan") return std::numeric_limits<double>::quiet_NaN();
  if (field == "inf") return kInfinity;
  if (field == "-inf") return -kInfinity;
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), v);
  if (ec != std::errc() || ptr != field.data() + field.size()) {
    throw std::invalid_argument("bad number '" + std::string(field) + "'");
  }
  return v;
}

std::vector<std::string_view> split(std::string_view line, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = line.find(sep, start);
    out.push_back(line.substr(start, pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

/// Identifies the settings a per-run file depends on, so stale files are not reused.
std::string run_fingerprint(const ExperimentConfig& cfg, const PolicyConfig& policy, std::uint64_t seed) {
  std::ostringstream out;
  out << "# mode=" << mode_name(cfg.mode) << " policy=" << policy_name(policy.kind)
      << " c=" << format_double(policy.c) << " horizon=" << cfg.horizon << " seed=" << seed;
  if (cfg.mode == Mode::synthetic) out << " problem=" << problem_name(cfg.problem);
  if (cfg.mode == Mode::mcts) {
    out << " property=" << property_name(cfg.property) << " per_node_best=" << cfg.per_node_best;
  }
  return out.str();
}

struct RunRecord {
  RunTrajectory trajectory;
  std::string best_smiles;
  double best_reward = -kInfinity;
};

std::string format_run(const std::string& fingerprint, const RunRecord& run) {
  std::string text = fingerprint + "\nt,arm,reward\n";
  for (std::size_t t = 0; t < run.trajectory.size(); ++t) {
    text += std::to_string(t + 1) + "," + std::to_string(run.trajectory.arms[t]) + "," +
            format_double(run.trajectory.rewards[t]) + "\n";
  }
  if (!run.best_smiles.empty()) text += "# best " + run.best_smiles + "\n";
  text += "# complete\n";
  return text;
}

std::optional<RunRecord> read_run(const fs::path& path, const std::string& fingerprint,
                                  std::int64_t horizon) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return std::nullopt;
  std::string line;
  if (!std::getline(in, line) || line != fingerprint) return std::nullopt;
  if (!std::getline(in, line) || line != "t,arm,reward") return std::nullopt;
  RunRecord run;
  bool complete = false;
  try {
    while (std::getline(in, line)) {
      if (line.rfind("# best ", 0) == 0) {
        run.best_smiles = line.substr(7);
        continue;
      }
      if (line == "# complete") {
        complete = true;
        break;
      }
      const auto fields = split(line, ',');
      if (fields.size() != 3) return std::nullopt;
      int arm = 0;
      std::from_chars(fields[1].data(), fields[1].data() + fields[1].size(), arm);
      run.trajectory.push(arm, parse_double_field(fields[2]));
    }
  } catch (const std::invalid_argument&) {
    return std::nullopt;
  }
  if (!complete || static_cast<std::int64_t>(run.trajectory.size()) != horizon) return std::nullopt;
  if (!run.trajectory.running_max.empty()) run.best_reward = run.trajectory.running_max.back();
  return run;
}

template <class Task>
void parallel_for(std::size_t count, unsigned jobs, Task&& task) {
  unsigned workers = jobs == 0 ? std::max(1u, std::thread::hardware_concurrency()) : jobs;
  workers = static_cast<unsigned>(std::min<std::size_t>(workers, std::max<std::size_t>(count, 1)));
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&] {
    while (true) {
      const std::size_t i = next.fetch_add(1);
      if (i >= count) return;
      {
        std::lock_guard lock(failure_mutex);
        if (failure) return;
      }
      try {
        task(i);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    }
  };
  if (workers <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  if (failure) std::rethrow_exception(failure);
}

std::string oracle_report(int example) {
  if (example == 1) return format_example1(example1_report());
  if (example == 2) return format_example2(example2_report());
  throw std::invalid_argument("oracle example must be 1 or 2");
}

}  // namespace

Mode parse_mode(std::string_view name) {
  if (name == "synthetic") return Mode::synthetic;
  if (name == "mcts") return Mode::mcts;
  if (name == "oracle") return Mode::oracle;
  throw std::invalid_argument("unknown mode '" + std::string(name) + "'");
}

std::string_view mode_name(Mode mode) {
  switch (mode) {
    case Mode::synthetic: return "synthetic";
    case Mode::mcts: return "mcts";
    case Mode::oracle: return "oracle";
  }
  return "?";
}

Aggregation ExperimentConfig::aggregation() const {
  if (aggregate) return *aggregate;
  return mode == Mode::mcts && property == Property::viscosity ? Aggregation::median_quantile
                                                               : Aggregation::mean_stderr;
}

PolicyConfig ExperimentConfig::policy_config(PolicyKind kind) const {
  PolicyConfig p = PolicyConfig::defaults(kind);
  if (c) p.c = *c;
  return p;
}

ExperimentConfig parse_config_json(std::string_view text, ExperimentConfig cfg) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("config: ") + e.what());
  }
  if (!doc.is_object()) throw std::invalid_argument("config: expected a JSON object");
  try {
    for (const auto& [key, value] : doc.items()) {
      if (key == "mode") cfg.mode = parse_mode(value.get<std::string>());
      else if (key == "problem") cfg.problem = parse_problem(value.get<std::string>());
      else if (key == "property") cfg.property = parse_property(value.get<std::string>());
      else if (key == "policy") {
        cfg.policies.clear();
        if (value.is_array()) {
          for (const auto& p : value) cfg.policies.push_back(parse_policy(p.get<std::string>()));
        } else {
          cfg.policies.push_back(parse_policy(value.get<std::string>()));
        }
      } else if (key == "c") cfg.c = value.get<double>();
      else if (key == "runs") cfg.runs = value.get<std::int64_t>();
      else if (key == "horizon") cfg.horizon = value.get<std::int64_t>();
      else if (key == "seed") cfg.seed = value.get<std::uint64_t>();
      else if (key == "out") cfg.out = value.get<std::string>();
      else if (key == "aggregate") cfg.aggregate = parse_aggregation(value.get<std::string>());
      else if (key == "example") cfg.example = value.get<int>();
      else if (key == "jobs") cfg.jobs = value.get<unsigned>();
      else if (key == "plot") cfg.plot = value.get<bool>();
      else if (key == "per_node_best") cfg.per_node_best = value.get<bool>();
      else if (key == "resume") cfg.resume = value.get<bool>();
      else throw std::invalid_argument("config: unknown key '" + key + "'");
    }
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("config: ") + e.what());
  }
  return cfg;
}

ExperimentConfig load_config(const std::string& path, ExperimentConfig base) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open config " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config_json(buf.str(), std::move(base));
}

void validate(const ExperimentConfig& cfg) {
  if (cfg.mode == Mode::oracle) {
    if (cfg.example != 1 && cfg.example != 2) throw std::invalid_argument("example must be 1 or 2");
    return;
  }
  if (cfg.runs < 1) throw std::invalid_argument("runs must be at least 1");
  if (cfg.horizon < 1) throw std::invalid_argument("horizon must be at least 1");
  if (cfg.policies.empty()) throw std::invalid_argument("no policy given");
  if (cfg.c && !(*cfg.c > 0.0 && std::isfinite(*cfg.c))) throw std::invalid_argument("c must be positive");
  for (PolicyKind kind : cfg.policies) {
    if (cfg.mode == Mode::mcts && needs_reward_log(kind)) {
      throw std::invalid_argument("policy " + std::string(policy_name(kind)) +
                                  " cannot be used in mcts mode");
    }
  }
}

ExperimentSummary run_experiment(const ExperimentConfig& cfg, std::ostream* log) {
  validate(cfg);
  const auto started = std::chrono::steady_clock::now();
  ExperimentSummary summary;
  const fs::path root(cfg.out);
  fs::create_directories(root);

  if (cfg.mode == Mode::oracle) {
    summary.report = oracle_report(cfg.example);
    write_file(root / "report.txt", summary.report);
    if (log) *log << summary.report;
    summary.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
    return summary;
  }

  std::optional<SyntheticProblem> problem;
  std::optional<Grammar> grammar;
  if (cfg.mode == Mode::synthetic) problem = make_problem(cfg.problem);
  if (cfg.mode == Mode::mcts) grammar.emplace(grammar_for(cfg.property));
  const Aggregation aggregation = cfg.aggregation();
  std::mutex log_mutex;

  for (PolicyKind kind : cfg.policies) {
    const PolicyConfig policy = cfg.policy_config(kind);
    const fs::path dir = root / std::string(policy_name(kind));
    fs::create_directories(dir / "runs");
    std::vector<RunRecord> runs(static_cast<std::size_t>(cfg.runs));

    parallel_for(runs.size(), cfg.jobs, [&](std::size_t i) {
      const std::uint64_t seed = derive_seed(cfg.seed, i);
      const std::string fingerprint = run_fingerprint(cfg, policy, seed);
      char name[32];
      std::snprintf(name, sizeof name, "run_%05zu.csv", i);
      const fs::path file = dir / "runs" / name;
      if (cfg.resume) {
        if (auto cached = read_run(file, fingerprint, cfg.horizon)) {
          runs[i] = std::move(*cached);
          return;
        }
      }
      RunRecord run;
      if (cfg.mode == Mode::synthetic) {
        run.trajectory = run_episode(*problem, policy, cfg.horizon, seed);
      } else {
        const Property property = cfg.property;
        auto result = search(
            *grammar, [property](const Molecule& m) { return evaluate(property, m.graph); }, policy,
            cfg.horizon, seed, SearchOptions{cfg.per_node_best});
        run.trajectory = std::move(result.trajectory);
        run.best_smiles = std::move(result.best_smiles);
        run.best_reward = result.best_reward;
      }
      write_file(file, format_run(fingerprint, run));
      runs[i] = std::move(run);
      if (log) {
        std::lock_guard lock(log_mutex);
        *log << policy_name(kind) << ": run " << i + 1 << "/" << cfg.runs << " done\n";
      }
    });

    std::vector<RunTrajectory> trajectories;
    trajectories.reserve(runs.size());
    for (auto& r : runs) trajectories.push_back(std::move(r.trajectory));

    PolicyOutcome outcome;
    outcome.kind = kind;
    std::optional<std::size_t> optimal;
    if (problem) optimal = problem->optimal_arm;
    outcome.series = aggregate(trajectories, optimal, aggregation);
    outcome.final_max = aggregation == Aggregation::median_quantile ? outcome.series.max_median.back()
                                                                    : outcome.series.max_mean.back();
    if (optimal) {
      const auto& ratio = outcome.series.opt_ratio;
      const std::size_t window = std::min(kRatioWindow, ratio.size());
      double acc = 0.0;
      for (std::size_t t = ratio.size() - window; t < ratio.size(); ++t) acc += ratio[t];
      outcome.final_ratio = acc / static_cast<double>(window);
    }
    emit_csv(outcome.series, (dir / "transition.csv").string());
    if (cfg.mode == Mode::mcts) {
      std::string text = "run,smiles,reward\n";
      for (std::size_t i = 0; i < runs.size(); ++i) {
        text += std::to_string(i) + "," + runs[i].best_smiles + "," + format_double(runs[i].best_reward) + "\n";
        outcome.best_smiles.push_back(runs[i].best_smiles);
        outcome.best_rewards.push_back(runs[i].best_reward);
      }
      write_file(dir / "molecules.csv", text);
    }
    summary.policies.push_back(std::move(outcome));
  }

  summary.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();

  nlohmann::ordered_json doc;
  doc["mode"] = mode_name(cfg.mode);
  if (cfg.mode == Mode::synthetic) doc["problem"] = problem_name(cfg.problem);
  if (cfg.mode == Mode::mcts) doc["property"] = property_name(cfg.property);
  doc["runs"] = cfg.runs;
  doc["horizon"] = cfg.horizon;
  doc["seed"] = cfg.seed;
  doc["aggregate"] = aggregation_name(aggregation);
  doc["wall_seconds"] = summary.wall_seconds;
  for (const auto& p : summary.policies) {
    nlohmann::ordered_json entry;
    entry["final_max"] = p.final_max;
    if (p.final_ratio) entry["final_opt_ratio"] = *p.final_ratio;
    if (!p.best_rewards.empty()) {
      const auto best = std::max_element(p.best_rewards.begin(), p.best_rewards.end());
      entry["best_reward"] = *best;
      entry["best_smiles"] = p.best_smiles[static_cast<std::size_t>(best - p.best_rewards.begin())];
    }
    doc["policies"][std::string(policy_name(p.kind))] = entry;
  }
  write_file(root / "summary.json", doc.dump(2) + "\n");

  if (cfg.plot) {
    std::vector<PlotSeries> plots;
    for (const auto& p : summary.policies) plots.push_back({std::string(policy_name(p.kind)), &p.series});
    std::string title = cfg.mode == Mode::synthetic ? "problem " + std::string(problem_name(cfg.problem))
                                                    : "property " + std::string(property_name(cfg.property));
    write_file(root / "plot.svg", render_svg(plots, title, kRatioWindow));
  }
  return summary;
}

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  if (ec != std::errc()) throw std::runtime_error("format_double failed");
  return std::string(buf, ptr);
}

std::string format_csv(const TransitionSeries& s) {
  if (s.size() == 0) throw std::invalid_argument("format_csv: empty series");
  const bool q = s.has_quantiles();
  std::string text = q ? "t,max_mean,max_stderr,opt_ratio,max_median,max_q25,max_q75\n"
                       : "t,max_mean,max_stderr,opt_ratio\n";
  for (std::size_t t = 0; t < s.size(); ++t) {
    text += std::to_string(t + 1);
    text += ',' + format_double(s.max_mean[t]);
    text += ',' + format_double(s.max_stderr[t]);
    text += ',' + format_double(s.opt_ratio[t]);
    if (q) {
      text += ',' + format_double(s.max_median[t]);
      text += ',' + format_double(s.max_q25[t]);
      text += ',' + format_double(s.max_q75[t]);
    }
    text += '\n';
  }
  return text;
}

void emit_csv(const TransitionSeries& series, const std::string& path) {
  write_file(path, format_csv(series));
}

TransitionSeries parse_csv(std::string_view text) {
  TransitionSeries s;
  std::size_t pos = 0;
  bool header = true;
  bool quantiles = false;
  while (pos < text.size()) {
    auto end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    const auto line = text.substr(pos, end - pos);
    pos = end + 1;
    if (line.empty()) continue;
    const auto fields = split(line, ',');
    if (header) {
      quantiles = fields.size() == 7;
      if (fields.size() != 4 && !quantiles) throw std::invalid_argument("parse_csv: bad header");
      header = false;
      continue;
    }
    if (fields.size() != (quantiles ? 7u : 4u)) throw std::invalid_argument("parse_csv: bad row");
    s.max_mean.push_back(parse_double_field(fields[1]));
    s.max_stderr.push_back(parse_double_field(fields[2]));
    s.opt_ratio.push_back(parse_double_field(fields[3]));
    if (quantiles) {
      s.max_median.push_back(parse_double_field(fields[4]));
      s.max_q25.push_back(parse_double_field(fields[5]));
      s.max_q75.push_back(parse_double_field(fields[6]));
    }
  }
  return s;
}

}  // namespace maxbandit

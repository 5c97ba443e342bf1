#include "cmdp/cli.hpp"

#include <CLI11.hpp>
#include <optional>
#include <string>
#include <vector>

#include "cmdp/analyzer.hpp"
#include "cmdp/errors.hpp"
#include "cmdp/io.hpp"
#include "cmdp/learner.hpp"

namespace cmdp {

namespace {

struct AnalyzeOptions {
  std::string mapping = "sas";
  double alpha = 0.05;
  double beta = 0.5;
  std::optional<std::size_t> horizon;
  std::string normalization = "min-max";
  double norm_scale = 1.0;
  double norm_offset = 0.0;
  double norm_center = 0.0;
  double norm_slope = 1.0;
  std::string format = "json";
};

struct Options {
  std::string mdp;
  std::string policy;
  std::string values;
  std::string run;
  std::string out;
  std::string report;
  std::vector<std::string> starts;
  AnalyzeOptions analysis;

  std::string algorithm = "tabular-td";
  double gamma = 0.9;
  std::size_t episodes = 500;
  double epsilon = 0.1;
  std::uint64_t seed = 0;
  double learning_rate = 1.0;
  std::size_t cadence = 10;
  std::size_t max_steps = 20;
  bool chain_analyze = false;
};

void add_analysis_flags(CLI::App& cmd, AnalyzeOptions& o) {
  cmd.add_option("--mapping", o.mapping, "Concept mapping")->check(CLI::IsMember({"s", "sas", "tau"}));
  cmd.add_option("--alpha", o.alpha, "Acceptability threshold in [0,1]");
  cmd.add_option("--beta", o.beta, "Evaluation threshold in [0,1]");
  cmd.add_option("--horizon", o.horizon, "Trajectory horizon (tau mapping; default |S|*|A|)");
  cmd.add_option("--normalization", o.normalization, "Reward/value normalization")
      ->check(CLI::IsMember({"min-max", "affine", "logistic"}));
  cmd.add_option("--norm-scale", o.norm_scale, "Affine scale");
  cmd.add_option("--norm-offset", o.norm_offset, "Affine offset");
  cmd.add_option("--norm-center", o.norm_center, "Logistic center");
  cmd.add_option("--norm-slope", o.norm_slope, "Logistic slope");
  cmd.add_option("--format", o.format, "Report format")->check(CLI::IsMember({"json", "text"}));
}

AnalysisConfig analysis_config(const AnalyzeOptions& o) {
  validate_thresholds(o.alpha, o.beta);
  if (o.horizon && *o.horizon == 0) throw DomainError("horizon must be at least 1");
  AnalysisConfig cfg;
  cfg.mapping = parse_mapping_kind(o.mapping);
  cfg.alpha = o.alpha;
  cfg.beta = o.beta;
  cfg.horizon = o.horizon;
  cfg.normalization.kind = parse_normalization_kind(o.normalization);
  cfg.normalization.scale = o.norm_scale;
  cfg.normalization.offset = o.norm_offset;
  cfg.normalization.center = o.norm_center;
  cfg.normalization.slope = o.norm_slope;
  return cfg;
}

std::vector<StateId> parse_starts(const TabularMdp& mdp, const std::vector<std::string>& labels) {
  std::vector<StateId> out;
  for (const auto& label : labels) out.push_back(mdp.states().at(label));
  return out;
}

std::string render(const CreativityReport& report, const std::string& format) {
  return format == "text" ? render_text(report) : report_to_json(report);
}

// The report goes to `path` when given (summary on stdout), else to stdout.
void emit_report(const CreativityReport& report, const AnalyzeOptions& o, const std::string& path,
                 std::ostream& out, std::ostream& err) {
  if (path.empty()) {
    out << render(report, o.format);
    err << summary_line(report) << "\n";
  } else {
    write_file(path, render(report, o.format));
    out << summary_line(report) << "\n";
  }
}

int cmd_validate(const Options& o, std::ostream& out) {
  const TabularMdp mdp = load_mdp(o.mdp);
  out << "ok " << o.mdp << "\n";
  if (!o.policy.empty()) {
    load_policy(o.policy, mdp);
    out << "ok " << o.policy << "\n";
  }
  if (!o.values.empty()) {
    load_values(o.values, mdp);
    out << "ok " << o.values << "\n";
  }
  if (!o.run.empty()) {
    load_run(o.run, mdp);
    out << "ok " << o.run << "\n";
  }
  return kExitOk;
}

int cmd_analyze(const Options& o, std::ostream& out, std::ostream& err) {
  const AnalysisConfig cfg = analysis_config(o.analysis);
  const TabularMdp mdp = load_mdp(o.mdp);
  if (o.policy.empty() == o.run.empty()) throw DomainError("analyze needs exactly one of --policy or --run");
  std::optional<ValueEstimate> values;
  if (!o.values.empty()) values = load_values(o.values, mdp);

  RunRecord run;
  if (!o.policy.empty()) {
    std::vector<StateId> starts = o.starts.empty() ? std::vector<StateId>{0} : parse_starts(mdp, o.starts);
    run = single_snapshot_run(load_policy(o.policy, mdp), values, std::move(starts));
  } else {
    if (!o.starts.empty()) throw DomainError("--start applies to --policy analyses; runs carry their own starts");
    run = load_run(o.run, mdp);
    if (values) {
      for (auto& snapshot : run.snapshots) {
        if (!snapshot.values) snapshot.values = values;
      }
    }
  }
  emit_report(analyze(mdp, run, cfg), o.analysis, o.out, out, err);
  return kExitOk;
}

int cmd_learn(const Options& o, std::ostream& out, std::ostream& err) {
  const TabularMdp mdp = load_mdp(o.mdp);
  LearnerConfig cfg;
  cfg.algorithm = parse_algorithm(o.algorithm);
  cfg.gamma = o.gamma;
  cfg.episodes = o.episodes;
  cfg.epsilon = o.epsilon;
  cfg.seed = o.seed;
  cfg.learning_rate = o.learning_rate;
  cfg.snapshot_every = o.cadence;
  cfg.max_episode_steps = o.max_steps;
  cfg.starts = parse_starts(mdp, o.starts);
  // Validate analysis flags before spending time on learning.
  std::optional<AnalysisConfig> analysis;
  if (o.chain_analyze) analysis = analysis_config(o.analysis);

  const RunRecord run = learn(mdp, cfg);
  const std::string text = run_to_json(run, mdp);
  if (!analysis) {
    if (o.out.empty()) {
      out << text;
    } else {
      write_file(o.out, text);
    }
    return kExitOk;
  }
  if (!o.out.empty()) write_file(o.out, text);
  emit_report(analyze(mdp, run, *analysis), o.analysis, o.report, out, err);
  return kExitOk;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Creativity analysis of MDP policies"};
  app.name("cmdp");
  app.require_subcommand(1);
  Options o;

  auto* validate = app.add_subcommand("validate", "Check MDP, policy, value and run files");
  validate->add_option("--mdp", o.mdp, "MDP file")->required();
  validate->add_option("--policy", o.policy, "Policy file");
  validate->add_option("--values", o.values, "Value file");
  validate->add_option("--run", o.run, "Run record file");

  auto* analyze_cmd = app.add_subcommand("analyze", "Classify a policy or a learning run");
  analyze_cmd->add_option("--mdp", o.mdp, "MDP file")->required();
  analyze_cmd->add_option("--policy", o.policy, "Policy file (single snapshot)");
  analyze_cmd->add_option("--values", o.values, "Value file (s and tau mappings)");
  analyze_cmd->add_option("--run", o.run, "Run record file");
  analyze_cmd->add_option("--start", o.starts, "Start state label (repeatable)");
  analyze_cmd->add_option("--out", o.out, "Report file (default stdout)");
  add_analysis_flags(*analyze_cmd, o.analysis);

  auto* learn_cmd = app.add_subcommand("learn", "Produce a run record with a tabular learner");
  learn_cmd->add_option("--mdp", o.mdp, "MDP file")->required();
  learn_cmd->add_option("--algorithm", o.algorithm, "tabular-td or value-iteration");
  learn_cmd->add_option("--gamma", o.gamma, "Discount factor in [0,1)");
  learn_cmd->add_option("--episodes", o.episodes, "TD episodes");
  learn_cmd->add_option("--epsilon", o.epsilon, "Exploration rate");
  learn_cmd->add_option("--seed", o.seed, "Random seed");
  learn_cmd->add_option("--learning-rate", o.learning_rate, "Initial TD step size in (0,1]");
  learn_cmd->add_option("--cadence", o.cadence, "Snapshot every this many episodes or sweeps");
  learn_cmd->add_option("--max-steps", o.max_steps, "Steps per episode");
  learn_cmd->add_option("--start", o.starts, "Episode start state label (repeatable)");
  learn_cmd->add_option("--out", o.out, "Run record file (default stdout)");
  learn_cmd->add_flag("--analyze", o.chain_analyze, "Analyze the run right away");
  learn_cmd->add_option("--report", o.report, "Report file for --analyze (default stdout)");
  add_analysis_flags(*learn_cmd, o.analysis);

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitDomain;
  }

  try {
    if (validate->parsed()) return cmd_validate(o, out);
    if (analyze_cmd->parsed()) return cmd_analyze(o, out, err);
    return cmd_learn(o, out, err);
  } catch (const IoError& e) {
    err << "error: " << e.what() << "\n";
    return kExitIo;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitDomain;
  }
}

}  // namespace cmdp

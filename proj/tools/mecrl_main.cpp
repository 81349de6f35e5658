// Command line experiment runner: train, eval and sweep subcommands over
// the offloading environment and the DQN agent.

#include <exception>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "mecrl/experiment/io.hpp"
#include "mecrl/experiment/runner.hpp"
#include "mecrl/experiment/spec.hpp"

namespace {

using mecrl::experiment::ExperimentSpec;
using mecrl::experiment::Mode;

std::vector<std::uint64_t> parse_seed_list(const std::string& text) {
  std::vector<std::uint64_t> seeds;
  std::size_t start = 0;
  while (start <= text.size()) {
    const std::size_t comma = text.find(',', start);
    const std::string item = text.substr(
        start, comma == std::string::npos ? std::string::npos : comma - start);
    if (!item.empty()) {
      seeds.push_back(std::stoull(item));
    }
    if (comma == std::string::npos) {
      break;
    }
    start = comma + 1;
  }
  if (seeds.empty()) {
    throw CLI::ValidationError("--seed", "expected a comma-separated integer list");
  }
  return seeds;
}

std::vector<double> parse_value_list(const std::string& text) {
  std::vector<double> values;
  std::size_t start = 0;
  while (start <= text.size()) {
    const std::size_t comma = text.find(',', start);
    const std::string item = text.substr(
        start, comma == std::string::npos ? std::string::npos : comma - start);
    if (!item.empty()) {
      values.push_back(std::stod(item));
    }
    if (comma == std::string::npos) {
      break;
    }
    start = comma + 1;
  }
  if (values.empty()) {
    throw CLI::ValidationError("--values", "expected a comma-separated number list");
  }
  return values;
}

// Machine-readable error record on stderr (and in the output dir when known).
int fail(const std::string& kind, const std::string& detail,
         const std::optional<std::filesystem::path>& out_dir) {
  nlohmann::json record;
  record["error"] = kind;
  record["detail"] = detail;
  std::cerr << record.dump() << '\n';
  if (out_dir) {
    try {
      mecrl::experiment::write_file_atomic(*out_dir / "error.json", record.dump(2) + "\n");
    } catch (const std::exception&) {
      // stderr already carries the record
    }
  }
  return 1;
}

struct CommonFlags {
  std::string config_path;
  std::string seeds;
  std::string out_dir;
  std::string policy;
  std::string checkpoint;
  std::size_t episodes = 0;
  bool trace = false;
};

void add_common(CLI::App* cmd, CommonFlags& flags) {
  cmd->add_option("--config", flags.config_path, "experiment config JSON (or a run manifest)")
      ->required();
  cmd->add_option("--seed", flags.seeds, "comma-separated seed list, e.g. 1,2,3");
  cmd->add_option("--out", flags.out_dir, "output directory for run artifacts");
  cmd->add_flag("--trace", flags.trace, "write a per-step JSON-lines trace log");
}

ExperimentSpec resolve(const CommonFlags& flags, Mode mode) {
  ExperimentSpec spec = mecrl::experiment::load_spec(flags.config_path);
  spec.mode = mode;
  if (!flags.seeds.empty()) {
    spec.seeds = parse_seed_list(flags.seeds);
  }
  if (!flags.out_dir.empty()) {
    spec.output_dir = flags.out_dir;
  }
  if (!flags.policy.empty()) {
    spec.policy = flags.policy;
  }
  if (!flags.checkpoint.empty()) {
    spec.checkpoint = flags.checkpoint;
  }
  if (flags.episodes > 0) {
    if (mode == Mode::kEval) {
      spec.eval_episodes = flags.episodes;
    } else {
      spec.agent.n_episodes = flags.episodes;
    }
  }
  if (flags.trace) {
    spec.trace = true;
  }
  return spec;
}

void report_artifacts(const mecrl::experiment::RunArtifacts& artifacts) {
  for (const auto& p : artifacts.metrics_csvs) {
    std::cout << "metrics: " << p.string() << '\n';
  }
  for (const auto& p : artifacts.checkpoints) {
    std::cout << "checkpoint: " << p.string() << '\n';
  }
  for (const auto& p : artifacts.traces) {
    std::cout << "trace: " << p.string() << '\n';
  }
  for (const auto& p : artifacts.manifests) {
    std::cout << "manifest: " << p.string() << '\n';
  }
  if (!artifacts.summary_csv.empty()) {
    std::cout << "summary: " << artifacts.summary_csv.string() << '\n';
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"MEC offloading simulator and deep Q-learning experiment runner"};
  app.require_subcommand(1);

  CommonFlags train_flags;
  auto* train = app.add_subcommand("train", "train the DQN agent");
  add_common(train, train_flags);
  train->add_option("--episodes", train_flags.episodes, "override the episode count");

  CommonFlags eval_flags;
  auto* eval = app.add_subcommand("eval", "evaluate a policy with frozen behavior");
  add_common(eval, eval_flags);
  eval->add_option("--policy", eval_flags.policy, "dqn | greedy | random | fixed_max_freq");
  eval->add_option("--checkpoint", eval_flags.checkpoint, "checkpoint for the dqn policy");
  eval->add_option("--episodes", eval_flags.episodes, "evaluation episode count");

  CommonFlags sweep_flags;
  std::string sweep_param = "eps_decay";
  std::string sweep_values;
  auto* sweep = app.add_subcommand("sweep", "train across a swept parameter");
  add_common(sweep, sweep_flags);
  sweep->add_option("--param", sweep_param, "eps_decay | users")
      ->check(CLI::IsMember({"eps_decay", "users"}));
  sweep->add_option("--values", sweep_values, "comma-separated values, e.g. 0.9,0.99,0.995")
      ->required();
  sweep->add_option("--episodes", sweep_flags.episodes, "override the episode count");

  CLI11_PARSE(app, argc, argv);

  const CommonFlags* flags = nullptr;
  Mode mode = Mode::kTrain;
  if (train->parsed()) {
    flags = &train_flags;
    mode = Mode::kTrain;
  } else if (eval->parsed()) {
    flags = &eval_flags;
    mode = Mode::kEval;
  } else {
    flags = &sweep_flags;
    mode = sweep_param == "users" ? Mode::kSweepUsers : Mode::kSweepEpsilon;
  }

  std::optional<std::filesystem::path> out_dir;
  if (!flags->out_dir.empty()) {
    out_dir = flags->out_dir;
  }

  try {
    ExperimentSpec spec = resolve(*flags, mode);
    if (sweep->parsed()) {
      spec.sweep_values = parse_value_list(sweep_values);
    }
    spec.validate();
    out_dir = spec.output_dir;
    const auto artifacts = mecrl::experiment::run(spec);
    report_artifacts(artifacts);
    return 0;
  } catch (const std::exception& e) {
    return fail("run_failed", e.what(), out_dir);
  }
}

#include "mecrl/experiment/runner.hpp"

#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <sstream>

#include <json.hpp>

#include "mecrl/agent/training.hpp"
#include "mecrl/baselines/policies.hpp"
#include "mecrl/experiment/io.hpp"
#include "mecrl/nn/mlp.hpp"

namespace mecrl::experiment {

namespace {

using nlohmann::json;

int log_level() {
  // MEC_RL_LOG: quiet | info | debug (default info).
  static const int level = [] {
    const char* v = std::getenv("MEC_RL_LOG");
    if (v == nullptr) return 1;
    const std::string s(v);
    if (s == "quiet") return 0;
    if (s == "debug") return 2;
    return 1;
  }();
  return level;
}

void log_info(const std::string& msg) {
  if (log_level() >= 1) {
    std::cerr << "[mecrl] " << msg << '\n';
  }
}

std::string fmt_value(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%g", v);
  return buf;
}

agent::PolicyFn make_policy(const ExperimentSpec& spec) {
  if (spec.policy == "dqn") {
    auto params = nn::load_checkpoint(*spec.checkpoint);
    return [params = std::move(params)](const env::Environment& environment,
                                        util::Rng& rng) {
      const auto q = nn::forward(params, environment.observation().flattened);
      return agent::select_action(q, 0.0, rng);  // greedy rollout
    };
  }
  const auto kind = baselines::policy_kind_from_string(spec.policy);
  return [kind](const env::Environment& environment, util::Rng& rng) {
    return baselines::select(kind, environment, rng)
        .encode(environment.config().n_freq_levels);
  };
}

agent::StepObserver make_trace_observer(std::ostringstream& sink) {
  return [&sink](std::size_t episode, std::size_t step, std::size_t action,
                 const env::StepOutcome& outcome) {
    json line;
    line["episode"] = episode;
    line["step"] = step;
    line["action"] = action;
    line["reward"] = outcome.reward;
    line["completed"] = outcome.info.task_completed;
    line["energy_j"] = outcome.info.energy_j;
    line["terminal"] = outcome.terminal;
    sink << line.dump() << '\n';
  };
}

// One training run for one seed; writes metrics, checkpoint, manifest and
// optional trace, and returns their paths through `artifacts`.
void train_one(const ExperimentSpec& spec, std::uint64_t seed, const std::string& stem,
               RunArtifacts& artifacts) {
  std::ostringstream trace;
  agent::StepObserver observer;
  if (spec.trace) {
    observer = make_trace_observer(trace);
  }

  log_info("training " + stem + " (seed " + std::to_string(seed) + ", " +
           std::to_string(spec.agent.n_episodes) + " episodes)");
  const auto result = agent::run_training(spec.env, spec.agent, seed, observer);

  const auto dir = spec.output_dir;
  const auto metrics_path = dir / (stem + "_metrics.csv");
  const auto checkpoint_path = dir / (stem + "_checkpoint.bin");
  const auto manifest_path = dir / (stem + "_manifest.json");

  write_file_atomic(metrics_path, result.report.to_csv());
  // Checkpoints are binary; route through the same temp-then-rename scheme.
  {
    namespace fs = std::filesystem;
    fs::create_directories(dir);
    fs::path tmp = checkpoint_path;
    tmp += ".tmp";
    nn::save_checkpoint(result.params, tmp);
    fs::rename(tmp, checkpoint_path);
  }

  std::vector<std::string> names = {metrics_path.filename().string(),
                                    checkpoint_path.filename().string()};
  if (spec.trace) {
    const auto trace_path = dir / (stem + "_trace.jsonl");
    write_file_atomic(trace_path, trace.str());
    artifacts.traces.push_back(trace_path);
    names.push_back(trace_path.filename().string());
  }
  write_file_atomic(manifest_path, make_manifest(spec, seed, names));

  artifacts.metrics_csvs.push_back(metrics_path);
  artifacts.checkpoints.push_back(checkpoint_path);
  artifacts.manifests.push_back(manifest_path);
}

RunArtifacts run_train(const ExperimentSpec& spec) {
  RunArtifacts artifacts;
  for (std::uint64_t seed : spec.seeds) {
    train_one(spec, seed, "train_seed" + std::to_string(seed), artifacts);
  }
  return artifacts;
}

RunArtifacts run_eval(const ExperimentSpec& spec) {
  RunArtifacts artifacts;
  const auto policy = make_policy(spec);

  std::vector<RunSummary> summaries;
  for (std::uint64_t seed : spec.seeds) {
    std::ostringstream trace;
    agent::StepObserver observer;
    if (spec.trace) {
      observer = make_trace_observer(trace);
    }
    log_info("evaluating policy '" + spec.policy + "' on seed " + std::to_string(seed));
    const auto report = agent::run_evaluation(spec.env, policy, spec.eval_episodes,
                                              spec.agent.t_max, seed, observer);
    const std::string stem = "eval_" + spec.policy + "_seed" + std::to_string(seed);
    const auto metrics_path = spec.output_dir / (stem + "_metrics.csv");
    write_file_atomic(metrics_path, report.to_csv());
    artifacts.metrics_csvs.push_back(metrics_path);
    if (spec.trace) {
      const auto trace_path = spec.output_dir / (stem + "_trace.jsonl");
      write_file_atomic(trace_path, trace.str());
      artifacts.traces.push_back(trace_path);
    }
    write_file_atomic(spec.output_dir / (stem + "_manifest.json"),
                      make_manifest(spec, seed, {metrics_path.filename().string()}));
    artifacts.manifests.push_back(spec.output_dir / (stem + "_manifest.json"));
    summaries.push_back(summarize_report(report, stem));
  }

  artifacts.summary_csv = spec.output_dir / ("eval_" + spec.policy + "_summary.csv");
  write_file_atomic(artifacts.summary_csv, summaries_to_csv(summaries));
  return artifacts;
}

RunArtifacts run_sweep(const ExperimentSpec& spec) {
  RunArtifacts artifacts;
  std::vector<RunSummary> summaries;
  const bool eps_sweep = spec.mode == Mode::kSweepEpsilon;

  for (double value : spec.sweep_values) {
    ExperimentSpec point = spec;
    std::string tag;
    if (eps_sweep) {
      point.agent.eps_decay = value;
      tag = "epsdecay" + fmt_value(value);
    } else {
      // Task arrival rate scales linearly with the user population.
      const auto users = static_cast<std::size_t>(value);
      point.env.mean_interarrival_s = spec.env.mean_interarrival_s *
                                      static_cast<double>(spec.env.n_users) /
                                      static_cast<double>(users);
      point.env.n_users = users;
      tag = "users" + std::to_string(users);
    }
    point.validate();

    for (std::uint64_t seed : spec.seeds) {
      const std::string stem = "sweep_" + tag + "_seed" + std::to_string(seed);
      train_one(point, seed, stem, artifacts);
      summaries.push_back(summarize_report(
          read_metrics_csv(artifacts.metrics_csvs.back()), stem));
    }
  }

  artifacts.summary_csv = spec.output_dir / "sweep_summary.csv";
  write_file_atomic(artifacts.summary_csv, summaries_to_csv(summaries));
  return artifacts;
}

}  // namespace

std::string make_manifest(const ExperimentSpec& spec, std::uint64_t seed,
                          const std::vector<std::string>& artifact_names) {
  ExperimentSpec resolved = spec;
  resolved.seeds = {seed};
  const std::string spec_json = spec_to_json(resolved);

  json manifest;
  manifest["schema"] = "mecrl-manifest-v1";
  manifest["seed"] = seed;
  manifest["config_fnv1a64"] = fnv1a64_hex(spec_json);
  manifest["artifacts"] = artifact_names;
  manifest["spec"] = json::parse(spec_json);
  return manifest.dump(2);
}

RunArtifacts run(const ExperimentSpec& spec) {
  spec.validate();
  switch (spec.mode) {
    case Mode::kTrain:
      return run_train(spec);
    case Mode::kEval:
      return run_eval(spec);
    case Mode::kSweepEpsilon:
    case Mode::kSweepUsers:
      return run_sweep(spec);
  }
  throw std::logic_error("unreachable mode");
}

}  // namespace mecrl::experiment

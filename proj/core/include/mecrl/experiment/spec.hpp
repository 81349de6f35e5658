#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "mecrl/agent/config.hpp"
#include "mecrl/env/config.hpp"

namespace mecrl::experiment {

enum class Mode { kTrain, kEval, kSweepEpsilon, kSweepUsers };

Mode mode_from_string(const std::string& name);
std::string to_string(Mode mode);

// Full description of one experiment run. Loaded from a JSON file; a run
// manifest uses the same schema plus provenance fields, so re-running from
// a manifest reproduces the original byte-for-byte.
struct ExperimentSpec {
  env::EnvConfig env;
  agent::AgentConfig agent;
  std::string policy = "dqn";  // dqn | greedy | random | fixed_max_freq
  Mode mode = Mode::kTrain;
  std::filesystem::path output_dir = "runs";
  std::vector<std::uint64_t> seeds = {1};
  std::size_t eval_episodes = 100;
  std::optional<std::filesystem::path> checkpoint;  // required by eval+dqn
  std::vector<double> sweep_values;                 // required by sweep modes
  bool trace = false;  // per-step JSON-lines trace log

  void validate() const;
};

ExperimentSpec spec_from_json(const std::string& json_text);
std::string spec_to_json(const ExperimentSpec& spec);
ExperimentSpec load_spec(const std::filesystem::path& file);

}  // namespace mecrl::experiment

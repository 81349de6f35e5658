#include "mecrl/experiment/spec.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "mecrl/baselines/policies.hpp"

namespace mecrl::experiment {

using nlohmann::json;

Mode mode_from_string(const std::string& name) {
  if (name == "train") return Mode::kTrain;
  if (name == "eval") return Mode::kEval;
  if (name == "sweep_epsilon") return Mode::kSweepEpsilon;
  if (name == "sweep_users") return Mode::kSweepUsers;
  throw std::invalid_argument("unknown mode: " + name);
}

std::string to_string(Mode mode) {
  switch (mode) {
    case Mode::kTrain:
      return "train";
    case Mode::kEval:
      return "eval";
    case Mode::kSweepEpsilon:
      return "sweep_epsilon";
    case Mode::kSweepUsers:
      return "sweep_users";
  }
  throw std::logic_error("unreachable mode");
}

void ExperimentSpec::validate() const {
  env.validate();
  agent.validate();
  if (policy != "dqn") {
    baselines::policy_kind_from_string(policy);  // throws on unknown names
  }
  if (seeds.empty()) {
    throw std::invalid_argument("at least one seed is required");
  }
  if (mode == Mode::kEval && policy == "dqn" && !checkpoint) {
    throw std::invalid_argument("eval mode with the dqn policy requires a checkpoint");
  }
  if ((mode == Mode::kSweepEpsilon || mode == Mode::kSweepUsers) && sweep_values.empty()) {
    throw std::invalid_argument("sweep modes require a nonempty value list");
  }
  if (mode == Mode::kSweepUsers) {
    for (double v : sweep_values) {
      if (v < 1.0 || v != static_cast<double>(static_cast<std::size_t>(v))) {
        throw std::invalid_argument("sweep_users values must be positive integers");
      }
    }
  }
  if (mode == Mode::kSweepEpsilon) {
    for (double v : sweep_values) {
      if (!(v > 0.0 && v < 1.0)) {
        throw std::invalid_argument("sweep_epsilon values must lie in (0, 1)");
      }
    }
  }
  if (eval_episodes < 1) {
    throw std::invalid_argument("eval_episodes must be >= 1");
  }
}

ExperimentSpec spec_from_json(const std::string& json_text) {
  json j = json::parse(json_text);
  if (!j.is_object()) {
    throw std::invalid_argument("experiment spec must be a JSON object");
  }

  ExperimentSpec spec;
  if (j.contains("env")) {
    spec.env = env::env_config_from_json(j["env"].dump());
  }
  if (j.contains("agent")) {
    spec.agent = agent::agent_config_from_json(j["agent"].dump());
  }
  if (j.contains("policy")) spec.policy = j["policy"].get<std::string>();
  if (j.contains("mode")) spec.mode = mode_from_string(j["mode"].get<std::string>());
  if (j.contains("output_dir")) {
    spec.output_dir = j["output_dir"].get<std::string>();
  }
  if (j.contains("seeds")) {
    spec.seeds = j["seeds"].get<std::vector<std::uint64_t>>();
  }
  if (j.contains("eval_episodes")) {
    spec.eval_episodes = j["eval_episodes"].get<std::size_t>();
  }
  if (j.contains("checkpoint")) {
    spec.checkpoint = std::filesystem::path(j["checkpoint"].get<std::string>());
  }
  if (j.contains("sweep_values")) {
    spec.sweep_values = j["sweep_values"].get<std::vector<double>>();
  }
  if (j.contains("trace")) spec.trace = j["trace"].get<bool>();
  spec.validate();
  return spec;
}

std::string spec_to_json(const ExperimentSpec& spec) {
  json j;
  j["env"] = json::parse(env::env_config_to_json(spec.env));
  j["agent"] = json::parse(agent::agent_config_to_json(spec.agent));
  j["policy"] = spec.policy;
  j["mode"] = to_string(spec.mode);
  j["output_dir"] = spec.output_dir.string();
  j["seeds"] = spec.seeds;
  j["eval_episodes"] = spec.eval_episodes;
  if (spec.checkpoint) {
    j["checkpoint"] = spec.checkpoint->string();
  }
  if (!spec.sweep_values.empty()) {
    j["sweep_values"] = spec.sweep_values;
  }
  j["trace"] = spec.trace;
  return j.dump(2);
}

ExperimentSpec load_spec(const std::filesystem::path& file) {
  std::ifstream in(file);
  if (!in) {
    throw std::runtime_error("cannot open experiment spec: " + file.string());
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  json j = json::parse(buf.str());
  // A manifest embeds the spec under "spec" next to provenance fields.
  if (j.is_object() && j.contains("spec")) {
    return spec_from_json(j["spec"].dump());
  }
  return spec_from_json(buf.str());
}

}  // namespace mecrl::experiment

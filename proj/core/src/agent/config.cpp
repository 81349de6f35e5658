#include "mecrl/agent/config.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace mecrl::agent {

namespace {

using nlohmann::json;

template <typename T>
void assign_if(const json& j, const char* key, T& out) {
  if (auto it = j.find(key); it != j.end()) {
    out = it->get<T>();
  }
}

}  // namespace

void AgentConfig::validate() const {
  if (!(gamma > 0.0 && gamma < 1.0)) {
    throw std::invalid_argument("gamma must lie in (0, 1)");
  }
  if (batch_size < 1) throw std::invalid_argument("batch_size must be >= 1");
  if (!(lr > 0.0)) throw std::invalid_argument("lr must be positive");
  if (!(eps_end > 0.0 && eps_end <= eps_start && eps_start <= 1.0)) {
    throw std::invalid_argument("need 0 < eps_end <= eps_start <= 1");
  }
  if (!(eps_decay > 0.0 && eps_decay < 1.0)) {
    throw std::invalid_argument("eps_decay must lie in (0, 1)");
  }
  if (target_sync_every < 1) {
    throw std::invalid_argument("target_sync_every must be >= 1");
  }
  if (replay_capacity < 1) {
    throw std::invalid_argument("replay_capacity must be >= 1");
  }
  if (batch_size > replay_capacity) {
    throw std::invalid_argument("batch_size must not exceed replay_capacity");
  }
  if (t_max < 1) throw std::invalid_argument("t_max must be >= 1");
  if (n_episodes < 1) throw std::invalid_argument("n_episodes must be >= 1");
  if (hidden_layers.empty()) {
    throw std::invalid_argument("at least one hidden layer is required");
  }
  for (std::size_t h : hidden_layers) {
    if (h == 0) throw std::invalid_argument("hidden layer width must be >= 1");
  }
}

AgentConfig agent_config_from_json(const std::string& json_text) {
  json j = json::parse(json_text);
  if (!j.is_object()) {
    throw std::invalid_argument("agent config must be a JSON object");
  }
  static const std::vector<std::string> known = {
      "gamma",          "batch_size",        "lr",
      "eps_start",      "eps_end",           "eps_decay",
      "target_sync_every", "target_sync_unit", "replay_capacity",
      "t_max",          "n_episodes",        "hidden_layers",
      "td_error_clip"};
  for (const auto& [key, value] : j.items()) {
    if (std::find(known.begin(), known.end(), key) == known.end()) {
      throw std::invalid_argument("unknown key '" + key + "' in agent config");
    }
  }

  AgentConfig cfg;
  assign_if(j, "gamma", cfg.gamma);
  assign_if(j, "batch_size", cfg.batch_size);
  assign_if(j, "lr", cfg.lr);
  assign_if(j, "eps_start", cfg.eps_start);
  assign_if(j, "eps_end", cfg.eps_end);
  assign_if(j, "eps_decay", cfg.eps_decay);
  assign_if(j, "target_sync_every", cfg.target_sync_every);
  if (j.contains("target_sync_unit")) {
    const std::string unit = j["target_sync_unit"].get<std::string>();
    if (unit == "episodes") {
      cfg.target_sync_unit = SyncUnit::kEpisodes;
    } else if (unit == "steps") {
      cfg.target_sync_unit = SyncUnit::kSteps;
    } else {
      throw std::invalid_argument("target_sync_unit must be 'episodes' or 'steps'");
    }
  }
  assign_if(j, "replay_capacity", cfg.replay_capacity);
  assign_if(j, "t_max", cfg.t_max);
  assign_if(j, "n_episodes", cfg.n_episodes);
  assign_if(j, "hidden_layers", cfg.hidden_layers);
  assign_if(j, "td_error_clip", cfg.td_error_clip);
  cfg.validate();
  return cfg;
}

std::string agent_config_to_json(const AgentConfig& cfg) {
  json j;
  j["gamma"] = cfg.gamma;
  j["batch_size"] = cfg.batch_size;
  j["lr"] = cfg.lr;
  j["eps_start"] = cfg.eps_start;
  j["eps_end"] = cfg.eps_end;
  j["eps_decay"] = cfg.eps_decay;
  j["target_sync_every"] = cfg.target_sync_every;
  j["target_sync_unit"] =
      cfg.target_sync_unit == SyncUnit::kEpisodes ? "episodes" : "steps";
  j["replay_capacity"] = cfg.replay_capacity;
  j["t_max"] = cfg.t_max;
  j["n_episodes"] = cfg.n_episodes;
  j["hidden_layers"] = cfg.hidden_layers;
  j["td_error_clip"] = cfg.td_error_clip;
  return j.dump(2);
}

AgentConfig load_agent_config(const std::filesystem::path& file) {
  std::ifstream in(file);
  if (!in) {
    throw std::runtime_error("cannot open config file: " + file.string());
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return agent_config_from_json(buf.str());
}

}  // namespace mecrl::agent

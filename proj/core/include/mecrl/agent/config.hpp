#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

namespace mecrl::agent {

// When to copy the learning network into the target network.
enum class SyncUnit { kEpisodes, kSteps };

struct AgentConfig {
  double gamma = 0.9;
  std::size_t batch_size = 256;
  double lr = 5e-4;
  double eps_start = 1.0;
  double eps_end = 0.05;
  double eps_decay = 0.995;
  std::size_t target_sync_every = 10;
  SyncUnit target_sync_unit = SyncUnit::kEpisodes;
  std::size_t replay_capacity = 100000;
  std::size_t t_max = 500;
  std::size_t n_episodes = 600;
  std::vector<std::size_t> hidden_layers = {256, 512, 512, 512, 256};
  bool td_error_clip = false;  // clamp per-sample TD error to [-1, 1]

  void validate() const;
};

AgentConfig agent_config_from_json(const std::string& json_text);
std::string agent_config_to_json(const AgentConfig& cfg);
AgentConfig load_agent_config(const std::filesystem::path& file);

}  // namespace mecrl::agent

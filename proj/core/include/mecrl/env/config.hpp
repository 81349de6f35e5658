#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <string>

namespace mecrl::env {

// Weights of the per-step reward
//   r = (1 - eta) * beta1 * F_task - eta * beta2 * log2(E) + const_c
// clipped elementwise to [clip_min, clip_max].
struct RewardConfig {
  double eta = 0.5;
  double beta1 = 1.0;
  double beta2 = 1.0;
  double const_c = 0.5;
  double clip_min = -10.0;
  double clip_max = 10.0;
};

// Uplink channel model. The received SNR is scaled so that its mean over
// fading and path loss equals `mean_snr` (linear), which pins the loosely
// specified "signal to noise ratio" setting to a concrete quantity.
struct ChannelConfig {
  double bandwidth_hz = 1e6;
  double tx_power_w = 0.5;
  double noise_power_w = 1e-13;
  double mean_snr = 100.0;
  std::array<double, 2> path_loss_range = {1e-9, 1e-8};
};

struct EnvConfig {
  std::size_t n_servers = 3;
  std::size_t n_users = 10;
  std::array<double, 2> server_freq_range_hz = {2e9, 8e9};
  std::size_t queue_capacity = 10;
  std::array<double, 2> task_data_bits_range = {2e5, 2e7};
  std::array<double, 2> task_cycles_range = {8e6, 1e7};
  std::array<double, 2> deadline_range_s = {0.5, 4.0};
  double mean_interarrival_s = 1e-3;
  std::size_t lambda_max_tasks_per_slot = 20;
  std::size_t n_freq_levels = 4;
  double energy_coeff_c = 1e-26;
  ChannelConfig channel;
  RewardConfig reward;
  std::uint64_t seed = 1;

  std::size_t n_actions() const { return n_servers * n_freq_levels; }
  std::size_t observation_length() const { return 3 + 5 * n_servers + n_servers; }
  // Tasks beyond lambda_max in one slot spill into the next slot; fading is
  // redrawn at slot boundaries.
  double slot_duration_s() const {
    return mean_interarrival_s * static_cast<double>(lambda_max_tasks_per_slot);
  }

  // Throws std::invalid_argument with a field-specific message.
  void validate() const;
};

// JSON (de)serialization; key names mirror the struct fields. Absent keys
// keep their defaults, unknown keys are rejected.
EnvConfig env_config_from_json(const std::string& json_text);
std::string env_config_to_json(const EnvConfig& cfg);
EnvConfig load_env_config(const std::filesystem::path& file);

}  // namespace mecrl::env

#include "mecrl/env/config.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace mecrl::env {

namespace {

using nlohmann::json;

void require_range(const std::array<double, 2>& r, const char* name) {
  if (!(r[0] <= r[1])) {
    throw std::invalid_argument(std::string(name) + ": range low must be <= high");
  }
}

void require_positive(double v, const char* name) {
  if (!(v > 0.0)) {
    throw std::invalid_argument(std::string(name) + " must be positive");
  }
}

std::array<double, 2> to_range(const json& j, const char* name) {
  if (!j.is_array() || j.size() != 2) {
    throw std::invalid_argument(std::string(name) + " must be a [low, high] pair");
  }
  return {j[0].get<double>(), j[1].get<double>()};
}

template <typename T>
void assign_if(const json& j, const char* key, T& out) {
  if (auto it = j.find(key); it != j.end()) {
    out = it->get<T>();
  }
}

void check_known_keys(const json& j, std::initializer_list<const char*> known,
                      const char* scope) {
  for (const auto& [key, value] : j.items()) {
    bool found = false;
    for (const char* k : known) {
      if (key == k) {
        found = true;
        break;
      }
    }
    if (!found) {
      throw std::invalid_argument(std::string("unknown key '") + key + "' in " + scope);
    }
  }
}

}  // namespace

void EnvConfig::validate() const {
  if (n_servers < 1) throw std::invalid_argument("n_servers must be >= 1");
  if (n_users < 1) throw std::invalid_argument("n_users must be >= 1");
  if (queue_capacity < 1) throw std::invalid_argument("queue_capacity must be >= 1");
  if (n_freq_levels < 1) throw std::invalid_argument("n_freq_levels must be >= 1");
  if (lambda_max_tasks_per_slot < 1) {
    throw std::invalid_argument("lambda_max_tasks_per_slot must be >= 1");
  }
  require_positive(mean_interarrival_s, "mean_interarrival_s");
  require_positive(energy_coeff_c, "energy_coeff_c");
  require_range(server_freq_range_hz, "server_freq_range_hz");
  require_positive(server_freq_range_hz[0], "server_freq_range_hz low");
  require_range(task_data_bits_range, "task_data_bits_range");
  require_positive(task_data_bits_range[0], "task_data_bits_range low");
  require_range(task_cycles_range, "task_cycles_range");
  require_positive(task_cycles_range[0], "task_cycles_range low");
  require_range(deadline_range_s, "deadline_range_s");
  require_positive(deadline_range_s[0], "deadline_range_s low");
  require_positive(channel.bandwidth_hz, "channel.bandwidth_hz");
  require_positive(channel.tx_power_w, "channel.tx_power_w");
  require_positive(channel.noise_power_w, "channel.noise_power_w");
  require_positive(channel.mean_snr, "channel.mean_snr");
  require_range(channel.path_loss_range, "channel.path_loss_range");
  require_positive(channel.path_loss_range[0], "channel.path_loss_range low");
  if (!(reward.clip_min < reward.clip_max)) {
    throw std::invalid_argument("reward.clip_min must be < reward.clip_max");
  }
  if (reward.eta < 0.0 || reward.eta > 1.0) {
    throw std::invalid_argument("reward.eta must lie in [0, 1]");
  }
  require_positive(reward.beta1, "reward.beta1");
  require_positive(reward.beta2, "reward.beta2");
  if (reward.const_c < 0.0) {
    throw std::invalid_argument("reward.const_c must be nonnegative");
  }
}

EnvConfig env_config_from_json(const std::string& json_text) {
  json j = json::parse(json_text);
  if (!j.is_object()) {
    throw std::invalid_argument("environment config must be a JSON object");
  }
  check_known_keys(j,
                   {"n_servers", "n_users", "server_freq_range_hz", "queue_capacity",
                    "task_data_bits_range", "task_cycles_range", "deadline_range_s",
                    "mean_interarrival_s", "lambda_max_tasks_per_slot", "n_freq_levels",
                    "energy_coeff_c", "channel", "reward", "seed"},
                   "environment config");

  EnvConfig cfg;
  assign_if(j, "n_servers", cfg.n_servers);
  assign_if(j, "n_users", cfg.n_users);
  if (j.contains("server_freq_range_hz")) {
    cfg.server_freq_range_hz = to_range(j["server_freq_range_hz"], "server_freq_range_hz");
  }
  assign_if(j, "queue_capacity", cfg.queue_capacity);
  if (j.contains("task_data_bits_range")) {
    cfg.task_data_bits_range = to_range(j["task_data_bits_range"], "task_data_bits_range");
  }
  if (j.contains("task_cycles_range")) {
    cfg.task_cycles_range = to_range(j["task_cycles_range"], "task_cycles_range");
  }
  if (j.contains("deadline_range_s")) {
    cfg.deadline_range_s = to_range(j["deadline_range_s"], "deadline_range_s");
  }
  assign_if(j, "mean_interarrival_s", cfg.mean_interarrival_s);
  assign_if(j, "lambda_max_tasks_per_slot", cfg.lambda_max_tasks_per_slot);
  assign_if(j, "n_freq_levels", cfg.n_freq_levels);
  assign_if(j, "energy_coeff_c", cfg.energy_coeff_c);
  if (j.contains("channel")) {
    const json& c = j["channel"];
    check_known_keys(c,
                     {"bandwidth_hz", "tx_power_w", "noise_power_w", "mean_snr",
                      "path_loss_range"},
                     "channel config");
    assign_if(c, "bandwidth_hz", cfg.channel.bandwidth_hz);
    assign_if(c, "tx_power_w", cfg.channel.tx_power_w);
    assign_if(c, "noise_power_w", cfg.channel.noise_power_w);
    assign_if(c, "mean_snr", cfg.channel.mean_snr);
    if (c.contains("path_loss_range")) {
      cfg.channel.path_loss_range = to_range(c["path_loss_range"], "channel.path_loss_range");
    }
  }
  if (j.contains("reward")) {
    const json& r = j["reward"];
    check_known_keys(r, {"eta", "beta1", "beta2", "const_c", "clip_min", "clip_max"},
                     "reward config");
    assign_if(r, "eta", cfg.reward.eta);
    assign_if(r, "beta1", cfg.reward.beta1);
    assign_if(r, "beta2", cfg.reward.beta2);
    assign_if(r, "const_c", cfg.reward.const_c);
    assign_if(r, "clip_min", cfg.reward.clip_min);
    assign_if(r, "clip_max", cfg.reward.clip_max);
  }
  assign_if(j, "seed", cfg.seed);
  cfg.validate();
  return cfg;
}

std::string env_config_to_json(const EnvConfig& cfg) {
  json j;
  j["n_servers"] = cfg.n_servers;
  j["n_users"] = cfg.n_users;
  j["server_freq_range_hz"] = cfg.server_freq_range_hz;
  j["queue_capacity"] = cfg.queue_capacity;
  j["task_data_bits_range"] = cfg.task_data_bits_range;
  j["task_cycles_range"] = cfg.task_cycles_range;
  j["deadline_range_s"] = cfg.deadline_range_s;
  j["mean_interarrival_s"] = cfg.mean_interarrival_s;
  j["lambda_max_tasks_per_slot"] = cfg.lambda_max_tasks_per_slot;
  j["n_freq_levels"] = cfg.n_freq_levels;
  j["energy_coeff_c"] = cfg.energy_coeff_c;
  j["channel"] = {{"bandwidth_hz", cfg.channel.bandwidth_hz},
                  {"tx_power_w", cfg.channel.tx_power_w},
                  {"noise_power_w", cfg.channel.noise_power_w},
                  {"mean_snr", cfg.channel.mean_snr},
                  {"path_loss_range", cfg.channel.path_loss_range}};
  j["reward"] = {{"eta", cfg.reward.eta},
                 {"beta1", cfg.reward.beta1},
                 {"beta2", cfg.reward.beta2},
                 {"const_c", cfg.reward.const_c},
                 {"clip_min", cfg.reward.clip_min},
                 {"clip_max", cfg.reward.clip_max}};
  j["seed"] = cfg.seed;
  return j.dump(2);
}

EnvConfig load_env_config(const std::filesystem::path& file) {
  std::ifstream in(file);
  if (!in) {
    throw std::runtime_error("cannot open config file: " + file.string());
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return env_config_from_json(buf.str());
}

}  // namespace mecrl::env

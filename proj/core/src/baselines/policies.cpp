#include "mecrl/baselines/policies.hpp"

#include <stdexcept>

#include "mecrl/sim/formulas.hpp"

namespace mecrl::baselines {

PolicyKind policy_kind_from_string(const std::string& name) {
  if (name == "greedy") return PolicyKind::kGreedy;
  if (name == "random") return PolicyKind::kRandom;
  if (name == "fixed_max_freq") return PolicyKind::kFixedMaxFreq;
  throw std::invalid_argument("unknown policy: " + name);
}

std::string to_string(PolicyKind kind) {
  switch (kind) {
    case PolicyKind::kGreedy:
      return "greedy";
    case PolicyKind::kRandom:
      return "random";
    case PolicyKind::kFixedMaxFreq:
      return "fixed_max_freq";
  }
  throw std::logic_error("unreachable policy kind");
}

std::vector<double> predicted_service_times(const sim::TaskProfile& task,
                                            const std::vector<sim::ServerState>& servers,
                                            const std::vector<double>& rates_bps) {
  if (servers.size() != rates_bps.size()) {
    throw std::invalid_argument("snapshot inconsistency: servers vs rates");
  }
  std::vector<double> times;
  times.reserve(servers.size());
  for (std::size_t k = 0; k < servers.size(); ++k) {
    const auto& srv = servers[k];
    times.push_back(sim::residual_time(srv) + sim::queue_wait_time(srv) +
                    sim::transmission_time(task, rates_bps[k]) +
                    sim::compute_time(task, srv.max_freq_hz));
  }
  return times;
}

env::Action greedy_action(const sim::TaskProfile& task,
                          const std::vector<sim::ServerState>& servers,
                          const std::vector<double>& rates_bps,
                          std::size_t n_freq_levels) {
  const auto times = predicted_service_times(task, servers, rates_bps);
  std::size_t best = 0;
  for (std::size_t k = 1; k < times.size(); ++k) {
    if (times[k] < times[best]) {
      best = k;
    }
  }
  return env::Action{best, n_freq_levels};
}

env::Action random_action(util::Rng& rng, std::size_t n_servers,
                          std::size_t n_freq_levels) {
  const std::size_t encoded = rng.uniform_index(n_servers * n_freq_levels);
  return env::Action::decode(encoded, n_freq_levels);
}

env::Action fixed_max_freq_action(util::Rng& rng, std::size_t n_servers,
                                  std::size_t n_freq_levels) {
  return env::Action{rng.uniform_index(n_servers), n_freq_levels};
}

env::Action select(PolicyKind kind, const env::Environment& environment,
                   util::Rng& rng) {
  const auto& cfg = environment.config();
  switch (kind) {
    case PolicyKind::kGreedy:
      return greedy_action(environment.pending_task(), environment.servers(),
                           environment.pending_rates(), cfg.n_freq_levels);
    case PolicyKind::kRandom:
      return random_action(rng, cfg.n_servers, cfg.n_freq_levels);
    case PolicyKind::kFixedMaxFreq:
      return fixed_max_freq_action(rng, cfg.n_servers, cfg.n_freq_levels);
  }
  throw std::logic_error("unreachable policy kind");
}

}  // namespace mecrl::baselines

#pragma once

#include <string>
#include <vector>

#include "mecrl/env/environment.hpp"
#include "mecrl/sim/types.hpp"
#include "mecrl/util/rng.hpp"

namespace mecrl::baselines {

// Non-learning comparison policies. Each is a pure function of the
// observation-time snapshot and never touches learning state.
enum class PolicyKind { kGreedy, kRandom, kFixedMaxFreq };

PolicyKind policy_kind_from_string(const std::string& name);
std::string to_string(PolicyKind kind);

// Predicted total service time (residual + queue wait + transmission +
// compute at maximum frequency) of the pending task on every server.
std::vector<double> predicted_service_times(const sim::TaskProfile& task,
                                            const std::vector<sim::ServerState>& servers,
                                            const std::vector<double>& rates_bps);

// Latency-greedy policy: the server with the smallest predicted service
// time (lowest index on ties) at the maximum frequency level.
env::Action greedy_action(const sim::TaskProfile& task,
                          const std::vector<sim::ServerState>& servers,
                          const std::vector<double>& rates_bps,
                          std::size_t n_freq_levels);

// Uniform draw over the encoded action space.
env::Action random_action(util::Rng& rng, std::size_t n_servers,
                          std::size_t n_freq_levels);

// Uniform server choice, always at the maximum frequency level.
env::Action fixed_max_freq_action(util::Rng& rng, std::size_t n_servers,
                                  std::size_t n_freq_levels);

// Applies the policy to a live environment snapshot.
env::Action select(PolicyKind kind, const env::Environment& environment,
                   util::Rng& rng);

}  // namespace mecrl::baselines

#include "mecrl/agent/training.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

namespace mecrl::agent {

namespace {

// Shortest decimal form that round-trips a double, locale-independent.
std::string fmt_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  double parsed = 0.0;
  std::sscanf(buf, "%lg", &parsed);
  for (int prec = 1; prec < 17; ++prec) {
    char probe[32];
    std::snprintf(probe, sizeof(probe), "%.*g", prec, v);
    std::sscanf(probe, "%lg", &parsed);
    if (parsed == v) {
      return probe;
    }
  }
  return buf;
}

std::uint64_t episode_seed(std::uint64_t base, std::size_t episode) {
  return util::derive_seed(base, 0xE9150D00ULL + episode);
}

}  // namespace

void TrainingReport::write_csv(std::ostream& out) const {
  out << kCsvHeader << '\n';
  for (const auto& r : rows) {
    out << r.episode << ',' << fmt_double(r.reward_sum) << ',' << r.tasks_completed
        << ',' << r.tasks_failed << ',' << fmt_double(r.energy_j) << ','
        << fmt_double(r.mean_loss) << ',' << fmt_double(r.epsilon) << '\n';
  }
}

std::string TrainingReport::to_csv() const {
  std::ostringstream out;
  write_csv(out);
  return out.str();
}

NanLossError::NanLossError(std::size_t ep, std::size_t st)
    : std::runtime_error("NaN loss at episode " + std::to_string(ep) + ", step " +
                         std::to_string(st)),
      episode(ep),
      step(st) {}

TrainingResult run_training(const env::EnvConfig& env_cfg, const AgentConfig& agent_cfg,
                            std::uint64_t seed, const StepObserver& observer) {
  env_cfg.validate();
  agent_cfg.validate();

  env::Environment environment(env_cfg);
  DqnAgent agent(agent_cfg, env_cfg.observation_length(), env_cfg.n_actions(), seed,
                 env_cfg.reward.clip_min, env_cfg.reward.clip_max);

  TrainingResult result;
  std::size_t global_step = 0;

  for (std::size_t episode = 1; episode <= agent_cfg.n_episodes; ++episode) {
    auto obs = environment.reset(episode_seed(seed, episode));

    EpisodeRow row;
    row.episode = episode;
    row.epsilon = agent.epsilon();
    double loss_sum = 0.0;
    std::size_t loss_count = 0;

    for (std::size_t step = 1; step <= agent_cfg.t_max; ++step) {
      const std::size_t action = agent.act(obs.flattened, agent.epsilon());
      const auto outcome = environment.step(action);

      agent.remember(Transition{obs.flattened, action, outcome.reward,
                                outcome.next_observation.flattened, outcome.terminal});

      row.reward_sum += outcome.reward;
      row.energy_j += outcome.info.energy_j;
      if (outcome.info.task_completed) {
        ++row.tasks_completed;
      } else {
        ++row.tasks_failed;
      }
      if (observer) {
        observer(episode, step, action, outcome);
      }

      if (auto loss = agent.learn()) {
        if (std::isnan(*loss)) {
          throw NanLossError(episode, step);
        }
        loss_sum += *loss;
        ++loss_count;
      }

      ++global_step;
      if (agent_cfg.target_sync_unit == SyncUnit::kSteps &&
          global_step % agent_cfg.target_sync_every == 0) {
        agent.sync_target();
      }

      if (outcome.terminal) {
        break;
      }
      obs = outcome.next_observation;
    }

    row.mean_loss = loss_count > 0 ? loss_sum / static_cast<double>(loss_count) : 0.0;
    result.report.rows.push_back(row);

    agent.decay();
    if (agent_cfg.target_sync_unit == SyncUnit::kEpisodes &&
        episode % agent_cfg.target_sync_every == 0) {
      agent.sync_target();
    }
  }

  result.params = agent.params();
  return result;
}

TrainingReport run_evaluation(const env::EnvConfig& env_cfg, const PolicyFn& policy,
                              std::size_t n_episodes, std::size_t t_max,
                              std::uint64_t seed, const StepObserver& observer) {
  env_cfg.validate();
  env::Environment environment(env_cfg);
  util::Rng rng(util::derive_seed(seed, 0xEA1));

  TrainingReport report;
  for (std::size_t episode = 1; episode <= n_episodes; ++episode) {
    environment.reset(episode_seed(seed, episode));

    EpisodeRow row;
    row.episode = episode;
    for (std::size_t step = 1; step <= t_max; ++step) {
      const std::size_t action = policy(environment, rng);
      const auto outcome = environment.step(action);
      row.reward_sum += outcome.reward;
      row.energy_j += outcome.info.energy_j;
      if (outcome.info.task_completed) {
        ++row.tasks_completed;
      } else {
        ++row.tasks_failed;
      }
      if (observer) {
        observer(episode, step, action, outcome);
      }
      if (outcome.terminal) {
        break;
      }
    }
    report.rows.push_back(row);
  }
  return report;
}

}  // namespace mecrl::agent

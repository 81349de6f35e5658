#include <benchmark/benchmark.h>

#include "mecrl/agent/dqn.hpp"
#include "mecrl/env/environment.hpp"
#include "mecrl/experiment/spec.hpp"
#include "mecrl/nn/mlp.hpp"
#include "mecrl/sim/formulas.hpp"
#include "mecrl/util/rng.hpp"

namespace {

mecrl::experiment::ExperimentSpec desk_scale() {
  return mecrl::experiment::load_spec(std::string(MECRL_SOURCE_DIR) +
                                      "/configs/desk_scale.json");
}

void BM_TransmissionRate(benchmark::State& state) {
  mecrl::sim::ChannelParams ch{1e6, 0.5, 1.3, 1e-8, 1e-13};
  for (auto _ : state) {
    benchmark::DoNotOptimize(mecrl::sim::transmission_rate(ch));
  }
}
BENCHMARK(BM_TransmissionRate);

void BM_EnvStepRandomPolicy(benchmark::State& state) {
  const auto spec = desk_scale();
  mecrl::env::Environment environment(spec.env);
  mecrl::util::Rng rng(1);
  std::uint64_t episode = 0;
  environment.reset(episode);
  for (auto _ : state) {
    if (environment.terminal()) {
      state.PauseTiming();
      environment.reset(++episode);
      state.ResumeTiming();
    }
    benchmark::DoNotOptimize(environment.step(rng.uniform_index(spec.env.n_actions())));
  }
}
BENCHMARK(BM_EnvStepRandomPolicy);

void BM_ForwardDeskScaleNet(benchmark::State& state) {
  const auto spec = desk_scale();
  mecrl::util::Rng rng(2);
  std::vector<std::size_t> sizes = {spec.env.observation_length()};
  sizes.insert(sizes.end(), spec.agent.hidden_layers.begin(),
               spec.agent.hidden_layers.end());
  sizes.push_back(spec.env.n_actions());
  const auto params = mecrl::nn::make_mlp(sizes, rng);
  std::vector<double> obs(spec.env.observation_length());
  for (auto& v : obs) {
    v = rng.uniform(-1.0, 1.0);
  }
  for (auto _ : state) {
    benchmark::DoNotOptimize(mecrl::nn::forward(params, obs));
  }
}
BENCHMARK(BM_ForwardDeskScaleNet);

void BM_TrainStepBatch64(benchmark::State& state) {
  const auto spec = desk_scale();
  mecrl::agent::DqnAgent agent(spec.agent, spec.env.observation_length(),
                               spec.env.n_actions(), 3, spec.env.reward.clip_min,
                               spec.env.reward.clip_max);
  mecrl::util::Rng rng(4);
  std::vector<mecrl::agent::Transition> batch;
  for (std::size_t i = 0; i < 64; ++i) {
    mecrl::agent::Transition t;
    t.observation.resize(spec.env.observation_length());
    t.next_observation.resize(spec.env.observation_length());
    for (auto& v : t.observation) {
      v = rng.uniform(-1.0, 1.0);
    }
    for (auto& v : t.next_observation) {
      v = rng.uniform(-1.0, 1.0);
    }
    t.action_encoded = rng.uniform_index(spec.env.n_actions());
    t.reward = rng.uniform(-1.0, 1.0);
    t.terminal = false;
    batch.push_back(std::move(t));
  }
  for (auto _ : state) {
    benchmark::DoNotOptimize(agent.train_step(batch));
  }
}
BENCHMARK(BM_TrainStepBatch64);

}  // namespace

BENCHMARK_MAIN();

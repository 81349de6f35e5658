#include <doctest.h>

#include <stdexcept>

#include <cmath>

#include "mecrl/nn/adam.hpp"
#include "mecrl/util/rng.hpp"

using namespace mecrl::nn;
using mecrl::util::Rng;

namespace {

MlpParams scalar_param(double w) {
  MlpParams p;
  p.layer_sizes = {1, 1};
  p.weights = {{w}};
  p.biases = {{0.0}};
  return p;
}

MlpParams scalar_grad(double gw, double gb = 0.0) {
  MlpParams g;
  g.layer_sizes = {1, 1};
  g.weights = {{gw}};
  g.biases = {{gb}};
  return g;
}

}  // namespace

TEST_CASE("zero gradients are a fixed point") {
  Rng rng(4);
  auto p = make_mlp({3, 4, 2}, rng);
  const auto before = p;
  auto state = make_adam(p, 1e-3);
  for (int i = 0; i < 5; ++i) {
    adam_step(p, zeros_like(p), state);
  }
  CHECK(p.weights == before.weights);  // bit-identical
  CHECK(p.biases == before.biases);
  CHECK(state.timestep == 5);
  for (const auto& m : state.first_moment.weights) {
    for (double v : m) {
      CHECK(v == 0.0);
    }
  }
}

TEST_CASE("first step matches the bias-corrected closed form") {
  // After one update from zero moments, m_hat = g and v_hat = g^2, so
  // delta = -lr * g / (|g| + eps), which approaches -lr * sign(g).
  for (double g : {0.5, -0.25, 3.0, -1e-3}) {
    auto p = scalar_param(1.0);
    auto state = make_adam(p, 5e-4);
    adam_step(p, scalar_grad(g), state);
    const double expected = 1.0 - state.lr * g / (std::fabs(g) + state.eps);
    CHECK(p.weights[0][0] == doctest::Approx(expected).epsilon(1e-12));
    CHECK(p.weights[0][0] ==
          doctest::Approx(1.0 - state.lr * (g > 0 ? 1.0 : -1.0)).epsilon(1e-6));
    CHECK(state.timestep == 1);
  }
}

TEST_CASE("repeated steps on a convex quadratic reduce the loss monotonically") {
  // f(w) = w^2 with gradient 2w.
  auto p = scalar_param(1.0);
  auto state = make_adam(p, 1e-2);
  double prev_loss = p.weights[0][0] * p.weights[0][0];
  for (int i = 0; i < 200; ++i) {
    const double w = p.weights[0][0];
    adam_step(p, scalar_grad(2.0 * w), state);
    const double loss = p.weights[0][0] * p.weights[0][0];
    CHECK(loss <= prev_loss + 1e-12);
    prev_loss = loss;
  }
  CHECK(prev_loss < 1e-2);
}

TEST_CASE("timestep increments by exactly one per update") {
  auto p = scalar_param(0.0);
  auto state = make_adam(p, 1e-3);
  for (std::uint64_t i = 1; i <= 10; ++i) {
    adam_step(p, scalar_grad(0.1), state);
    CHECK(state.timestep == i);
  }
}

TEST_CASE("shape mismatches are rejected") {
  auto p = scalar_param(0.0);
  auto state = make_adam(p, 1e-3);
  MlpParams bad;
  bad.layer_sizes = {1, 2};
  bad.weights = {{0.0, 0.0}};
  bad.biases = {{0.0, 0.0}};
  CHECK_THROWS_AS(adam_step(p, bad, state), std::invalid_argument);
}

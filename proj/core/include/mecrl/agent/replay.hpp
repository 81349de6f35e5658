#pragma once

#include <limits>
#include <optional>
#include <vector>

#include "mecrl/util/rng.hpp"

namespace mecrl::agent {

// One experience tuple. Rewards are stored post-clipping; the buffer
// enforces the bounds at push time.
struct Transition {
  std::vector<double> observation;
  std::size_t action_encoded = 0;
  double reward = 0.0;
  std::vector<double> next_observation;
  bool terminal = false;
};

// Fixed-capacity ring store with FIFO eviction and uniform sampling with
// replacement.
class ReplayBuffer {
 public:
  explicit ReplayBuffer(std::size_t capacity,
                        double clip_min = -std::numeric_limits<double>::infinity(),
                        double clip_max = std::numeric_limits<double>::infinity());

  // Inserts, evicting the oldest entry once full. Rejects rewards outside
  // the clip bounds.
  void push(Transition t);

  bool ready(std::size_t batch_size) const { return size_ >= batch_size; }

  // Uniform sample with replacement; nullopt while the buffer holds fewer
  // than batch_size entries (training warm-up).
  std::optional<std::vector<Transition>> sample(std::size_t batch_size,
                                                util::Rng& rng) const;

  std::size_t size() const { return size_; }
  std::size_t capacity() const { return capacity_; }
  const Transition& at(std::size_t i) const { return storage_[i]; }

 private:
  std::size_t capacity_;
  double clip_min_;
  double clip_max_;
  std::vector<Transition> storage_;
  std::size_t write_cursor_ = 0;
  std::size_t size_ = 0;
};

}  // namespace mecrl::agent

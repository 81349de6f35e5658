#include "mecrl/agent/replay.hpp"

#include <limits>
#include <stdexcept>

namespace mecrl::agent {

ReplayBuffer::ReplayBuffer(std::size_t capacity, double clip_min, double clip_max)
    : capacity_(capacity), clip_min_(clip_min), clip_max_(clip_max) {
  if (capacity_ == 0) {
    throw std::invalid_argument("replay capacity must be positive");
  }
  storage_.reserve(capacity_);
}

void ReplayBuffer::push(Transition t) {
  if (!(t.reward >= clip_min_ && t.reward <= clip_max_)) {
    throw std::invalid_argument("replay push: reward violates clip bounds");
  }
  if (size_ < capacity_) {
    storage_.push_back(std::move(t));
    ++size_;
  } else {
    storage_[write_cursor_] = std::move(t);
  }
  write_cursor_ = (write_cursor_ + 1) % capacity_;
}

std::optional<std::vector<Transition>> ReplayBuffer::sample(std::size_t batch_size,
                                                            util::Rng& rng) const {
  if (!ready(batch_size)) {
    return std::nullopt;
  }
  std::vector<Transition> batch;
  batch.reserve(batch_size);
  for (std::size_t i = 0; i < batch_size; ++i) {
    batch.push_back(storage_[rng.uniform_index(size_)]);
  }
  return batch;
}

}  // namespace mecrl::agent

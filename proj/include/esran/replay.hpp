#pragma once

#include <cstddef>
#include <stdexcept>
#include <vector>

#include "esran/rng.hpp"

namespace esran::rl {

struct InsufficientData : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Transition {
  std::vector<double> obs;
  int action = 0;
  double reward = 0.0;
  std::vector<double> nextObs;
};

// Fixed-capacity ring buffer with FIFO eviction.
class ReplayMemory {
 public:
  explicit ReplayMemory(size_t capacity = 3000) : capacity_(capacity) {
    if (capacity_ == 0) throw InsufficientData("capacity must be positive");
  }

  void push(Transition t) {
    if (buffer_.size() < capacity_) {
      buffer_.push_back(std::move(t));
    } else {
      buffer_[head_] = std::move(t);
      head_ = (head_ + 1) % capacity_;
    }
  }

  size_t size() const { return buffer_.size(); }
  size_t capacity() const { return capacity_; }

  // index 0 = oldest surviving transition
  const Transition& at(size_t i) const {
    if (i >= buffer_.size()) throw InsufficientData("index out of range");
    return buffer_[(head_ + i) % buffer_.size()];
  }

  std::vector<size_t> sample_indices(size_t batch, Rng& rng) const {
    if (buffer_.size() < batch)
      throw InsufficientData("replay memory smaller than the batch");
    std::vector<size_t> idx(batch);
    for (size_t i = 0; i < batch; ++i) idx[i] = rng.below(buffer_.size());
    return idx;
  }

 private:
  size_t capacity_;
  size_t head_ = 0;
  std::vector<Transition> buffer_;
};

}  // namespace esran::rl

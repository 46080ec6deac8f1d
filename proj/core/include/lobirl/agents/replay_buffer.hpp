#pragma once

#include <cstdint>
#include <vector>

#include "lobirl/env/env.hpp"
#include "lobirl/num/rng.hpp"

namespace lobirl::agents {

struct Transition {
  std::array<double, env::kObservationDim> obs;
  int action = 0;
  double reward = 0.0;
  std::array<double, env::kObservationDim> next_obs;
  bool done = false;
};

/// Fixed-capacity ring buffer with uniform sampling.
class ReplayBuffer {
 public:
  explicit ReplayBuffer(std::size_t capacity) : capacity_(capacity) { data_.reserve(capacity); }

  void push(const Transition& t) {
    if (data_.size() < capacity_) {
      data_.push_back(t);
    } else {
      data_[head_] = t;
    }
    head_ = (head_ + 1) % capacity_;
  }

  std::size_t size() const { return data_.size(); }
  std::size_t capacity() const { return capacity_; }

  const Transition& sample(num::Rng& rng) const {
    return data_[static_cast<std::size_t>(rng.uniform_int(0, static_cast<int>(data_.size()) - 1))];
  }

 private:
  std::size_t capacity_;
  std::size_t head_ = 0;
  std::vector<Transition> data_;
};

}  // namespace lobirl::agents

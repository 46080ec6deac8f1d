#pragma once

#include <functional>
#include <utility>

#include "lobirl/env/env.hpp"

namespace lobirl::env {

/// Runs another environment's transitions but pays a caller-supplied reward
/// r(s, a) on the pre-step observation. Used to retrain agents on recovered
/// reward functions while the true dynamics (and true PnL) stay untouched.
class RewardOverrideEnv final : public Environment {
 public:
  using RewardFn = std::function<double(const num::Tensor& obs, Action a)>;

  RewardOverrideEnv(Environment* inner, RewardFn reward)
      : inner_(inner), reward_(std::move(reward)) {
    if (inner_ == nullptr || !reward_) throw std::invalid_argument("RewardOverrideEnv: missing inner env or reward");
  }

  num::Tensor reset(std::uint64_t seed) override {
    obs_ = inner_->reset(seed);
    return obs_;
  }

  StepResult step(Action a) override {
    const double r = reward_(obs_, a);
    StepResult out = inner_->step(a);
    out.reward = r;
    obs_ = out.observation;
    return out;
  }

  const EnvConfig& config() const override { return inner_->config(); }
  int position() const override { return inner_->position(); }
  int step_index() const override { return inner_->step_index(); }

 private:
  Environment* inner_;
  RewardFn reward_;
  num::Tensor obs_;
};

}  // namespace lobirl::env

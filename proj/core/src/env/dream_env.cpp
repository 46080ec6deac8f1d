#include "lobirl/env/dream_env.hpp"

#include <stdexcept>

namespace lobirl::env {

using num::Tensor;

DreamEnv::DreamEnv(const wm::MdnRnn* mdn, const wm::RewardModel* reward, Tensor start_latents, EnvConfig cfg)
    : mdn_(mdn), reward_(reward), start_latents_(std::move(start_latents)), cfg_(cfg) {
  cfg_.validate();
  if (mdn_ == nullptr || reward_ == nullptr) {
    throw std::invalid_argument("DreamEnv: missing world-model components");
  }
  num::require_rank2("DreamEnv", start_latents_);
  if (start_latents_.cols() != wm::kLatentDim || start_latents_.rows() < 1) {
    num::throw_shape_error("DreamEnv", "start latents must be [Nx12], got " + start_latents_.shape_str());
  }
}

Tensor DreamEnv::reset(std::uint64_t seed) {
  rng_ = num::Rng(seed);
  const int row = rng_.uniform_int(0, start_latents_.rows() - 1);
  z_ = Tensor({1, wm::kLatentDim});
  for (int j = 0; j < wm::kLatentDim; ++j) z_(0, j) = start_latents_(row, j);
  h_ = mdn_->initial_hidden();
  position_ = 0;
  step_ = 0;
  live_ = true;
  return make_observation(z_.reshaped({wm::kLatentDim}), position_, cfg_.max_position);
}

StepResult DreamEnv::step(Action a) {
  if (!live_) throw std::logic_error("DreamEnv::step: reset() has not been called");
  if (step_ >= cfg_.episode_len) throw std::logic_error("DreamEnv::step: episode already done");

  const Tensor z_flat = z_.reshaped({wm::kLatentDim});
  const double reward = reward_->predict(z_flat, static_cast<int>(a));

  auto [params, next_h] = mdn_->forward(z_, static_cast<int>(a), h_);
  z_ = wm::mdn_sample(params, cfg_.temperature, rng_);
  h_ = std::move(next_h);

  const int delta = action_delta(a);
  position_ = std::clamp(position_ + delta, -cfg_.max_position, cfg_.max_position);
  ++step_;

  StepResult out;
  out.observation = make_observation(z_.reshaped({wm::kLatentDim}), position_, cfg_.max_position);
  out.reward = reward;
  out.done = (step_ == cfg_.episode_len);
  return out;
}

}  // namespace lobirl::env

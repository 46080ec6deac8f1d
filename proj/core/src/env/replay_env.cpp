#include "lobirl/env/replay_env.hpp"

#include <algorithm>
#include <stdexcept>

namespace lobirl::env {

using num::Tensor;

ReplayEnv::ReplayEnv(const wm::Autoencoder* encoder, std::vector<lob::LobWindow> windows, EnvConfig cfg) : cfg_(cfg) {
  cfg_.validate();
  if (encoder == nullptr) throw std::invalid_argument("ReplayEnv: missing encoder");
  const int per_episode = cfg_.episode_len + 1;
  slots_ = static_cast<int>(windows.size()) / per_episode;
  if (slots_ < 1) {
    throw std::invalid_argument("ReplayEnv: need at least " + std::to_string(per_episode) + " windows, got " +
                                std::to_string(windows.size()));
  }
  // Encode the whole stream once; per-step work is then a lookup.
  latents_ = encoder->encode(lob::window_matrix(windows, 0, windows.size()));
  mids_.reserve(windows.size());
  for (const lob::LobWindow& w : windows) mids_.push_back(w.last_mid);
}

Tensor ReplayEnv::observation_at(int cursor) const {
  Tensor z({wm::kLatentDim});
  for (int j = 0; j < wm::kLatentDim; ++j) z[j] = latents_(cursor, j);
  return make_observation(z, position_, cfg_.max_position);
}

Tensor ReplayEnv::reset(std::uint64_t seed) {
  const int slot = static_cast<int>(seed % static_cast<std::uint64_t>(slots_));
  cursor_ = slot * (cfg_.episode_len + 1);
  position_ = 0;
  step_ = 0;
  cash_ = 0.0;
  live_ = true;
  return observation_at(cursor_);
}

StepResult ReplayEnv::step(Action a) {
  if (!live_) throw std::logic_error("ReplayEnv::step: reset() has not been called");
  if (step_ >= cfg_.episode_len) throw std::logic_error("ReplayEnv::step: episode already done");

  const double mid_now = mids_[static_cast<std::size_t>(cursor_)];
  const double mid_next = mids_[static_cast<std::size_t>(cursor_) + 1];

  const int next_position = std::clamp(position_ + action_delta(a), -cfg_.max_position, cfg_.max_position);
  const int traded = next_position - position_;
  const double reward = next_position * (mid_next - mid_now) - cfg_.trade_cost * std::abs(traded);
  cash_ -= traded * mid_now + cfg_.trade_cost * std::abs(traded);

  position_ = next_position;
  ++cursor_;
  ++step_;

  StepResult out;
  out.observation = observation_at(cursor_);
  out.reward = reward;
  out.done = (step_ == cfg_.episode_len);
  out.info_mid = mid_next;
  out.has_info_mid = true;
  return out;
}

}  // namespace lobirl::env

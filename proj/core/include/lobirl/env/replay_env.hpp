#pragma once

#include <vector>

#include "lobirl/env/env.hpp"
#include "lobirl/lob/window.hpp"

namespace lobirl::env {

/// Evaluation environment driven by held-out tick data: transitions walk the
/// window sequence, rewards are ground-truth mark-to-market PnL
///   r_t = position_{t+1} * (mid_{t+1} - mid_t) - trade_cost * |dposition|
/// with trades executed at the current mid. Episodes occupy disjoint
/// consecutive segments of episode_len + 1 windows; reset(seed) picks segment
/// seed % slot_count, so distinct seeds cover distinct data.
class ReplayEnv final : public Environment {
 public:
  ReplayEnv(const wm::Autoencoder* encoder, std::vector<lob::LobWindow> windows, EnvConfig cfg);

  num::Tensor reset(std::uint64_t seed) override;
  StepResult step(Action a) override;

  const EnvConfig& config() const override { return cfg_; }
  int position() const override { return position_; }
  int step_index() const override { return step_; }

  double cash() const { return cash_; }
  double current_mid() const { return mids_[static_cast<std::size_t>(cursor_)]; }
  int slot_count() const { return slots_; }

 private:
  num::Tensor observation_at(int cursor) const;

  EnvConfig cfg_;
  num::Tensor latents_;        // [N x 12], windows encoded once up front
  std::vector<double> mids_;   // true mid per window
  int slots_ = 0;

  int cursor_ = 0;  // index of the current window
  int position_ = 0;
  int step_ = 0;
  double cash_ = 0.0;
  bool live_ = false;
};

}  // namespace lobirl::env

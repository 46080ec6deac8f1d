#pragma once

#include "lobirl/env/env.hpp"
#include "lobirl/num/rng.hpp"
#include "lobirl/wm/mdn.hpp"
#include "lobirl/wm/reward.hpp"

namespace lobirl::env {

/// World-model environment: transitions sample the MDN-RNN, rewards come from
/// the learned reward regressor. Fully deterministic per reset seed. Models
/// are shared read-only; one DreamEnv per rollout worker.
class DreamEnv final : public Environment {
 public:
  /// start_latents [N x 12]: pool of encoded windows used as episode starts.
  DreamEnv(const wm::MdnRnn* mdn, const wm::RewardModel* reward, num::Tensor start_latents, EnvConfig cfg);

  num::Tensor reset(std::uint64_t seed) override;
  StepResult step(Action a) override;

  const EnvConfig& config() const override { return cfg_; }
  int position() const override { return position_; }
  int step_index() const override { return step_; }

 private:
  const wm::MdnRnn* mdn_;
  const wm::RewardModel* reward_;
  num::Tensor start_latents_;
  EnvConfig cfg_;

  num::Rng rng_{0};
  num::Tensor z_;  // [1 x 12]
  num::Tensor h_;  // [1 x 128]
  int position_ = 0;
  int step_ = 0;
  bool live_ = false;
};

}  // namespace lobirl::env

#pragma once

#include <cstdint>
#include <vector>

#include "lobirl/num/layers.hpp"
#include "lobirl/wm/autoencoder.hpp"

namespace lobirl::wm {

/// Regression model for the per-step reward given (z, a): dense stack
/// (12 + action_dim) -> 32 -> 1 with tanh hidden units.
struct RewardModel {
  int action_dim = 3;
  num::Mlp net;

  RewardModel(int action_dim, std::uint64_t seed);

  /// z is [12] or [1 x 12]; action is an index into the one-hot block.
  double predict(const num::Tensor& z, int action) const;

  std::vector<num::Parameter*> parameters() { return net.parameters(); }
};

/// Flat (z, a, r) tuple store: features holds z concatenated with the one-hot
/// action, one row per tuple.
struct RewardDataset {
  num::Tensor features;  // [N x (12 + action_dim)]
  num::Tensor targets;   // [N x 1]

  std::int64_t size() const { return targets.size(); }
};

struct RewardTrainConfig {
  int epochs = 12;
  int batch_size = 256;
  double lr = 1e-3;
  double lr_decay = 1.0;  // multiplicative per epoch
  double holdout_fraction = 0.1;
  std::uint64_t seed = 3;
};

struct RewardTrainReport {
  std::vector<double> epoch_mse;
  double holdout_mse = 0.0;
  double holdout_target_variance = 0.0;  // MSE of predicting the mean
};

RewardTrainReport train_reward_model(RewardModel& model, const RewardDataset& data, const RewardTrainConfig& config);

}  // namespace lobirl::wm

#include "lobirl/wm/reward.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>

#include "lobirl/num/adam.hpp"
#include "lobirl/num/rng.hpp"

namespace lobirl::wm {

using num::Tensor;

RewardModel::RewardModel(int action_dim_, std::uint64_t seed) : action_dim(action_dim_) {
  num::Rng rng(seed);
  net = num::Mlp("reward", {kLatentDim + action_dim, 32, 1}, num::Activation::tanh, num::Activation::identity, rng);
  // Zero-initialized head: the model starts as the mean predictor and only
  // grows feature weights that reduce the loss.
  net.layers.back().weights.value.fill(0.0);
}

double RewardModel::predict(const Tensor& z, int action) const {
  if (z.size() != kLatentDim) {
    num::throw_shape_error("RewardModel::predict", "expected 12 latent dims, got " + z.shape_str());
  }
  if (action < 0 || action >= action_dim) {
    throw std::invalid_argument("RewardModel::predict: action index out of range");
  }
  Tensor input({1, kLatentDim + action_dim});
  for (int j = 0; j < kLatentDim; ++j) input(0, j) = z[j];
  input(0, kLatentDim + action) = 1.0;
  const double r = net.forward(input)[0];
  if (!std::isfinite(r)) throw std::runtime_error("RewardModel::predict: non-finite output");
  return r;
}

RewardTrainReport train_reward_model(RewardModel& model, const RewardDataset& data, const RewardTrainConfig& config) {
  const int n = data.features.rows();
  if (n < 100) throw std::invalid_argument("train_reward_model: need at least 100 tuples, got " + std::to_string(n));
  if (data.targets.rows() != n) num::throw_shape_error("train_reward_model", "feature/target row mismatch");

  const int holdout = std::max(1, static_cast<int>(n * config.holdout_fraction));
  const int n_train = n - holdout;
  const int dim = data.features.cols();

  num::Rng rng(config.seed);
  num::Adam opt(model.parameters(), {.lr = config.lr});
  RewardTrainReport report;

  // Head bias starts at the target mean, so training only has to learn the
  // structure around it.
  double target_mean = 0.0;
  for (int i = 0; i < n_train; ++i) target_mean += data.targets(i, 0);
  model.net.layers.back().bias.value[0] = target_mean / n_train;

  std::vector<int> order(static_cast<std::size_t>(n_train));
  std::iota(order.begin(), order.end(), 0);

  for (int epoch = 0; epoch < config.epochs; ++epoch) {
    opt.set_lr(config.lr * std::pow(config.lr_decay, epoch));
    rng.shuffle(order);
    double epoch_loss = 0.0;
    int batches = 0;
    for (std::size_t pos = 0; pos < order.size(); pos += static_cast<std::size_t>(config.batch_size)) {
      const std::size_t count = std::min<std::size_t>(config.batch_size, order.size() - pos);
      Tensor x({static_cast<int>(count), dim});
      Tensor y({static_cast<int>(count), 1});
      for (std::size_t i = 0; i < count; ++i) {
        const int row = order[pos + i];
        for (int j = 0; j < dim; ++j) x(static_cast<int>(i), j) = data.features(row, j);
        y(static_cast<int>(i), 0) = data.targets(row, 0);
      }
      num::Tape t;
      const auto pred = model.net.forward(t, t.constant(x));
      const auto loss = t.mean_all(t.square(t.sub(pred, t.constant(y))));
      const double loss_value = t.value(loss)[0];
      if (!std::isfinite(loss_value)) {
        throw std::runtime_error("train_reward_model: loss diverged at epoch " + std::to_string(epoch));
      }
      opt.zero_grad();
      t.backward(loss);
      opt.step();
      epoch_loss += loss_value;
      ++batches;
    }
    report.epoch_mse.push_back(epoch_loss / batches);
  }

  Tensor hx({holdout, dim});
  Tensor hy({holdout, 1});
  for (int i = 0; i < holdout; ++i) {
    for (int j = 0; j < dim; ++j) hx(i, j) = data.features(n_train + i, j);
    hy(i, 0) = data.targets(n_train + i, 0);
  }
  const Tensor pred = model.net.forward(hx);
  report.holdout_mse = num::mean(num::square(num::sub(pred, hy)));
  const double holdout_mean = num::mean(hy);
  report.holdout_target_variance = num::mean(num::square(num::add_scalar(hy, -holdout_mean)));
  return report;
}

}  // namespace lobirl::wm

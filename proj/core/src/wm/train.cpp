#include "lobirl/wm/train.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "lobirl/num/adam.hpp"

namespace lobirl::wm {

using num::Tape;
using num::Tensor;

namespace {

void check_sequence(const Tensor& latents, const std::vector<int>& actions) {
  num::require_rank2("train_mdnrnn", latents);
  if (latents.cols() != kLatentDim) {
    num::throw_shape_error("train_mdnrnn", "latents must be [Nx12], got " + latents.shape_str());
  }
  if (static_cast<int>(actions.size()) < latents.rows() - 1) {
    throw std::invalid_argument("train_mdnrnn: need an action per transition");
  }
}

}  // namespace

double mdn_sequence_nll(const MdnRnn& model, const Tensor& latents, const std::vector<int>& actions, int begin,
                        int end) {
  check_sequence(latents, actions);
  if (begin < 0 || end > latents.rows() || end - begin < 2) {
    throw std::invalid_argument("mdn_sequence_nll: bad transition range");
  }
  Tensor h = model.initial_hidden();
  Tensor z({1, kLatentDim});
  double total = 0.0;
  int count = 0;
  for (int t = begin; t + 1 < end; ++t) {
    for (int j = 0; j < kLatentDim; ++j) z(0, j) = latents(t, j);
    auto [params, next_h] = model.forward(z, actions[static_cast<std::size_t>(t)], h);
    h = std::move(next_h);
    Tensor target({kLatentDim});
    for (int j = 0; j < kLatentDim; ++j) target[j] = latents(t + 1, j);
    total += mdn_nll(params, target);
    ++count;
  }
  return total / count;
}

double median_predicted_scale(const MdnRnn& model, const Tensor& latents, const std::vector<int>& actions, int begin,
                              int end) {
  check_sequence(latents, actions);
  Tensor h = model.initial_hidden();
  Tensor z({1, kLatentDim});
  std::vector<double> scales;
  for (int t = begin; t + 1 < end; ++t) {
    for (int j = 0; j < kLatentDim; ++j) z(0, j) = latents(t, j);
    auto [params, next_h] = model.forward(z, actions[static_cast<std::size_t>(t)], h);
    h = std::move(next_h);
    for (std::int64_t i = 0; i < params.scales.size(); ++i) scales.push_back(params.scales[i]);
  }
  std::sort(scales.begin(), scales.end());
  return scales[scales.size() / 2];
}

MdnTrainReport train_mdnrnn(MdnRnn& model, const Tensor& latents, const std::vector<int>& actions,
                            const MdnTrainConfig& config) {
  check_sequence(latents, actions);
  const int n = latents.rows();
  const int holdout = std::max(config.unroll + 2, static_cast<int>(n * config.holdout_fraction));
  const int n_train = n - holdout;
  if (n_train < config.unroll + 1) {
    throw std::invalid_argument("train_mdnrnn: sequence too short for the configured unroll");
  }

  MdnTrainReport report;
  report.holdout_nll_initial = mdn_sequence_nll(model, latents, actions, n_train, n);

  // Chunk starts cover disjoint unroll-length spans of the training range.
  std::vector<int> starts;
  for (int s = 0; s + config.unroll + 1 <= n_train; s += config.unroll) starts.push_back(s);
  if (starts.empty()) throw std::invalid_argument("train_mdnrnn: no full training chunk available");

  num::Rng rng(config.seed);
  auto params = model.parameters();
  num::Adam opt(params, {.lr = config.lr});

  const int action_dim = model.action_dim;
  for (int epoch = 0; epoch < config.epochs; ++epoch) {
    rng.shuffle(starts);
    double epoch_loss = 0.0;
    int updates = 0;
    for (std::size_t pos = 0; pos < starts.size(); pos += static_cast<std::size_t>(config.batch_size)) {
      const int b = static_cast<int>(std::min<std::size_t>(config.batch_size, starts.size() - pos));
      Tape t;
      Tape::Id h = t.constant(Tensor({b, kRnnHidden}));
      Tape::Id loss_sum = t.constant(Tensor({1}));
      for (int j = 0; j < config.unroll; ++j) {
        Tensor x({b, kLatentDim + action_dim});
        Tensor target({b, kLatentDim});
        for (int i = 0; i < b; ++i) {
          const int row = starts[pos + static_cast<std::size_t>(i)] + j;
          for (int c = 0; c < kLatentDim; ++c) {
            x(i, c) = latents(row, c);
            target(i, c) = latents(row + 1, c);
          }
          x(i, kLatentDim + actions[static_cast<std::size_t>(row)]) = 1.0;
        }
        h = model.cell.step(t, t.constant(x), h);
        const Tape::Id head_out = model.head.forward(t, h);
        loss_sum = t.add(loss_sum, mdn_nll_graph(t, head_out, target));
      }
      const Tape::Id loss = t.scale(loss_sum, 1.0 / config.unroll);
      const double loss_value = t.value(loss)[0];
      if (!std::isfinite(loss_value)) {
        throw std::runtime_error("train_mdnrnn: loss diverged at epoch " + std::to_string(epoch));
      }
      opt.zero_grad();
      t.backward(loss);
      num::clip_global_norm(params, config.clip_norm);
      opt.step();
      epoch_loss += loss_value;
      ++updates;
    }
    report.epoch_nll.push_back(epoch_loss / updates);
  }

  report.holdout_nll_trained = mdn_sequence_nll(model, latents, actions, n_train, n);
  return report;
}

}  // namespace lobirl::wm

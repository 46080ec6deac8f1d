#include "lobirl/wm/autoencoder.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>

#include "lobirl/num/adam.hpp"
#include "lobirl/num/rng.hpp"

namespace lobirl::wm {

using num::Activation;
using num::Tensor;

Autoencoder::Autoencoder(std::uint64_t seed) {
  num::Rng rng(seed);
  encoder = num::Mlp("enc", {lob::kWindowFeatures, 64, kLatentDim}, Activation::tanh, Activation::identity, rng);
  decoder = num::Mlp("dec", {kLatentDim, 64, lob::kWindowFeatures}, Activation::tanh, Activation::identity, rng);
}

Tensor Autoencoder::encode(const Tensor& x) const {
  if (x.cols() != lob::kWindowFeatures) {
    num::throw_shape_error("Autoencoder::encode", "expected " + std::to_string(lob::kWindowFeatures) + " features, got " +
                                                      x.shape_str());
  }
  if (!x.all_finite()) throw std::invalid_argument("Autoencoder::encode: non-finite input");
  return encoder.forward(x);
}

Tensor Autoencoder::decode(const Tensor& z) const {
  if (z.cols() != kLatentDim) {
    num::throw_shape_error("Autoencoder::decode", "expected " + std::to_string(kLatentDim) + " latent dims, got " +
                                                      z.shape_str());
  }
  return decoder.forward(z);
}

Tensor Autoencoder::encode_window(const lob::LobWindow& w) const {
  Tensor x({1, lob::kWindowFeatures});
  for (int j = 0; j < lob::kWindowFeatures; ++j) x(0, j) = w.features[static_cast<std::size_t>(j)];
  return encode(x);
}

std::vector<num::Parameter*> Autoencoder::parameters() {
  std::vector<num::Parameter*> out = encoder.parameters();
  for (num::Parameter* p : decoder.parameters()) out.push_back(p);
  return out;
}

AutoencoderReport train_autoencoder(Autoencoder& model, const std::vector<lob::LobWindow>& windows,
                                    const AutoencoderConfig& config) {
  if (windows.size() < 1000) {
    throw std::invalid_argument("train_autoencoder: need at least 1000 windows, got " + std::to_string(windows.size()));
  }
  const std::size_t holdout = std::max<std::size_t>(1, static_cast<std::size_t>(windows.size() * config.holdout_fraction));
  const std::size_t n_train = windows.size() - holdout;
  const Tensor train_x = lob::window_matrix(windows, 0, n_train);
  const Tensor holdout_x = lob::window_matrix(windows, n_train, holdout);

  num::Rng rng(config.seed);
  num::Adam opt(model.parameters(), {.lr = config.lr});

  AutoencoderReport report;
  std::vector<int> order(n_train);
  std::iota(order.begin(), order.end(), 0);

  for (int epoch = 0; epoch < config.epochs; ++epoch) {
    rng.shuffle(order);
    double epoch_loss = 0.0;
    int batches = 0;
    for (std::size_t pos = 0; pos < order.size(); pos += static_cast<std::size_t>(config.batch_size)) {
      const std::size_t count = std::min<std::size_t>(config.batch_size, order.size() - pos);
      Tensor x({static_cast<int>(count), lob::kWindowFeatures});
      for (std::size_t i = 0; i < count; ++i) {
        const int row = order[pos + i];
        for (int j = 0; j < lob::kWindowFeatures; ++j) x(static_cast<int>(i), j) = train_x(row, j);
      }
      num::Tape t;
      const auto xid = t.constant(x);
      const auto recon = model.decoder.forward(t, model.encoder.forward(t, xid));
      const auto loss = t.mean_all(t.square(t.sub(recon, xid)));
      const double loss_value = t.value(loss)[0];
      if (!std::isfinite(loss_value)) {
        throw std::runtime_error("train_autoencoder: loss diverged to non-finite at epoch " + std::to_string(epoch));
      }
      opt.zero_grad();
      t.backward(loss);
      opt.step();
      epoch_loss += loss_value;
      ++batches;
    }
    report.epoch_mse.push_back(epoch_loss / batches);
  }

  const Tensor recon = model.decode(model.encode(holdout_x));
  report.holdout_mse = num::mean(num::square(num::sub(recon, holdout_x)));
  const double hold_mean = num::mean(holdout_x);
  report.holdout_variance = num::mean(num::square(num::add_scalar(holdout_x, -hold_mean)));
  return report;
}

}  // namespace lobirl::wm

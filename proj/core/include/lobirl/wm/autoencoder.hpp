#pragma once

#include <cstdint>
#include <vector>

#include "lobirl/lob/window.hpp"
#include "lobirl/num/layers.hpp"

namespace lobirl::wm {

inline constexpr int kLatentDim = 12;

/// Dense autoencoder compressing a normalized 120-feature LOB window into a
/// 12-dim latent vector: encoder 120 -> 64 -> 12, decoder 12 -> 64 -> 120.
struct Autoencoder {
  num::Mlp encoder;
  num::Mlp decoder;

  explicit Autoencoder(std::uint64_t seed);

  /// x is one window row [1 x 120] or a batch [N x 120]; throws on
  /// non-finite input. Output has kLatentDim columns.
  num::Tensor encode(const num::Tensor& x) const;
  num::Tensor decode(const num::Tensor& z) const;

  num::Tensor encode_window(const lob::LobWindow& w) const;  // -> [1 x 12]

  std::vector<num::Parameter*> parameters();
};

struct AutoencoderConfig {
  int epochs = 15;
  int batch_size = 64;
  double lr = 1e-3;
  double holdout_fraction = 0.1;
  std::uint64_t seed = 1;
};

struct AutoencoderReport {
  std::vector<double> epoch_mse;   // training reconstruction MSE per epoch
  double holdout_mse = 0.0;
  double holdout_variance = 0.0;   // per-element variance of held-out inputs
};

/// Minibatch Adam on reconstruction MSE. Requires at least 1000 windows;
/// aborts with a diagnostic if the loss turns non-finite.
AutoencoderReport train_autoencoder(Autoencoder& model, const std::vector<lob::LobWindow>& windows,
                                    const AutoencoderConfig& config);

}  // namespace lobirl::wm

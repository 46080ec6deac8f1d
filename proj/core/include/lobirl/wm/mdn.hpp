#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "lobirl/num/layers.hpp"
#include "lobirl/num/rng.hpp"
#include "lobirl/wm/autoencoder.hpp"

namespace lobirl::wm {

inline constexpr int kMixtureComponents = 5;
inline constexpr int kRnnHidden = 128;

/// Gaussian mixture over the next latent state, factorized per latent
/// dimension: weights sum to 1 per dimension, scales strictly positive.
struct MdnParams {
  num::Tensor weights;  // [12 x 5]
  num::Tensor means;    // [12 x 5]
  num::Tensor scales;   // [12 x 5]

  void validate() const;  // throws on broken invariants
};

/// Recurrent mixture-density transition model p(z'|z, a, h). Input is the
/// latent vector concatenated with a one-hot action; the dense head emits,
/// per latent dimension, kMixtureComponents weight logits, means, and
/// log-scales (12 x 5 x 3 = 180 outputs). Log-scales are clamped to
/// [-8, 4] before exponentiation.
struct MdnRnn {
  int action_dim = 3;
  num::RecurrentCell cell;  // (12 + action_dim) -> 128
  num::DenseLayer head;     // 128 -> 180, identity

  MdnRnn(int action_dim, std::uint64_t seed);

  int input_size() const { return kLatentDim + action_dim; }
  num::Tensor initial_hidden() const { return num::Tensor({1, kRnnHidden}); }

  /// One transition step for a single state. z is [1 x 12] (or [12]),
  /// h is [1 x 128]; returns mixture parameters and the next hidden state.
  std::pair<MdnParams, num::Tensor> forward(const num::Tensor& z, int action, const num::Tensor& h) const;

  std::vector<num::Parameter*> parameters();
};

inline constexpr double kLogScaleMin = -8.0;
inline constexpr double kLogScaleMax = 4.0;

/// Head row -> per-dimension mixture parameters (softmax weights,
/// exp-clamped scales).
MdnParams mdn_params_from_head(const num::Tensor& head_out, int row);

/// Negative log-density of z_next under the factorized mixture, summed over
/// the 12 dimensions; log-sum-exp guarded. z_next is [12] or [1 x 12].
double mdn_nll(const MdnParams& params, const num::Tensor& z_next);

/// Per dimension: pick a component proportionally to its weight, then draw
/// from N(mean, (scale * temperature)^2). temperature >= 0; zero collapses
/// each component to its mean.
num::Tensor mdn_sample(const MdnParams& params, double temperature, num::Rng& rng);  // -> [1 x 12]

/// Tape node for the mean per-sample NLL of a batched head output
/// [B x 180] against targets [B x 12]. Shares the exact formulas above.
num::Tape::Id mdn_nll_graph(num::Tape& t, num::Tape::Id head_out, const num::Tensor& z_next);

}  // namespace lobirl::wm

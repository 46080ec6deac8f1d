#pragma once

#include <cstdint>
#include <vector>

#include "lobirl/wm/mdn.hpp"

namespace lobirl::wm {

struct MdnTrainConfig {
  int epochs = 4;
  int unroll = 32;      // truncated-BPTT length
  int batch_size = 32;  // chunks per update
  double lr = 1e-3;
  double clip_norm = 5.0;
  double holdout_fraction = 0.1;
  std::uint64_t seed = 2;
};

struct MdnTrainReport {
  std::vector<double> epoch_nll;      // mean per-transition NLL per epoch
  double holdout_nll_initial = 0.0;
  double holdout_nll_trained = 0.0;
};

/// Mean per-transition NLL over transitions [begin, end), hidden state
/// carried from zero at `begin`.
double mdn_sequence_nll(const MdnRnn& model, const num::Tensor& latents, const std::vector<int>& actions, int begin,
                        int end);

/// Median predicted scale over the same transition range, useful to verify
/// that deterministic dynamics shrink the mixture.
double median_predicted_scale(const MdnRnn& model, const num::Tensor& latents, const std::vector<int>& actions,
                              int begin, int end);

/// Truncated-BPTT Adam training of p(z'|z,a). latents is [N x 12]; actions
/// has at least N-1 entries (action taken between consecutive latents).
/// Gradients are clipped at global norm clip_norm. Aborts on divergence.
MdnTrainReport train_mdnrnn(MdnRnn& model, const num::Tensor& latents, const std::vector<int>& actions,
                            const MdnTrainConfig& config);

}  // namespace lobirl::wm

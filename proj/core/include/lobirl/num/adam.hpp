#pragma once

#include <cstdint>
#include <vector>

#include "lobirl/num/tape.hpp"

namespace lobirl::num {

struct AdamConfig {
  double lr = 1e-3;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double eps = 1e-8;
};

/// Bias-corrected Adam over a fixed parameter set. Moment buffers mirror the
/// parameter shapes; the step count only moves forward.
class Adam {
 public:
  explicit Adam(std::vector<Parameter*> params, AdamConfig cfg = {});

  /// Applies one update from the accumulated gradients. Throws on a
  /// non-finite gradient, naming the offending parameter.
  void step();
  void zero_grad();

  std::int64_t steps() const { return step_count_; }
  void set_lr(double lr) { cfg_.lr = lr; }
  const AdamConfig& config() const { return cfg_; }
  const std::vector<Parameter*>& params() const { return params_; }

 private:
  struct Moments {
    Tensor m;
    Tensor v;
  };

  std::vector<Parameter*> params_;
  std::vector<Moments> moments_;
  AdamConfig cfg_;
  std::int64_t step_count_ = 0;
};

}  // namespace lobirl::num

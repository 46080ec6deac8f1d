#include "lobirl/num/adam.hpp"

#include <cmath>
#include <stdexcept>

namespace lobirl::num {

Adam::Adam(std::vector<Parameter*> params, AdamConfig cfg) : params_(std::move(params)), cfg_(cfg) {
  moments_.reserve(params_.size());
  for (const Parameter* p : params_) {
    moments_.push_back({Tensor(p->value.shape()), Tensor(p->value.shape())});
  }
}

void Adam::step() {
  ++step_count_;
  const double bc1 = 1.0 - std::pow(cfg_.beta1, static_cast<double>(step_count_));
  const double bc2 = 1.0 - std::pow(cfg_.beta2, static_cast<double>(step_count_));
  for (std::size_t k = 0; k < params_.size(); ++k) {
    Parameter& p = *params_[k];
    Moments& mo = moments_[k];
    for (std::int64_t i = 0; i < p.size(); ++i) {
      const double g = p.grad[i];
      if (!std::isfinite(g)) {
        throw std::runtime_error("Adam::step: non-finite gradient in parameter '" + p.name + "'");
      }
      mo.m[i] = cfg_.beta1 * mo.m[i] + (1.0 - cfg_.beta1) * g;
      mo.v[i] = cfg_.beta2 * mo.v[i] + (1.0 - cfg_.beta2) * g * g;
      const double m_hat = mo.m[i] / bc1;
      const double v_hat = mo.v[i] / bc2;
      p.value[i] -= cfg_.lr * m_hat / (std::sqrt(v_hat) + cfg_.eps);
    }
  }
}

void Adam::zero_grad() {
  for (Parameter* p : params_) p->zero_grad();
}

}  // namespace lobirl::num

#include "lobirl/env/env.hpp"

#include <stdexcept>

namespace lobirl::env {

void EnvConfig::validate() const {
  if (gamma < 0.0 || gamma > 1.0) throw std::invalid_argument("EnvConfig: gamma must be in [0, 1]");
  if (episode_len <= 0) throw std::invalid_argument("EnvConfig: episode_len must be > 0");
  if (max_position < 1) throw std::invalid_argument("EnvConfig: max_position must be >= 1");
  if (trade_cost < 0.0) throw std::invalid_argument("EnvConfig: trade_cost must be >= 0");
  if (temperature < 0.0) throw std::invalid_argument("EnvConfig: temperature must be >= 0");
}

double episode_return(const std::vector<double>& rewards, double gamma) {
  double acc = 0.0;
  for (auto it = rewards.rbegin(); it != rewards.rend(); ++it) acc = *it + gamma * acc;
  return acc;
}

num::Tensor make_observation(const num::Tensor& z, int position, int max_position) {
  if (z.size() != wm::kLatentDim) {
    num::throw_shape_error("make_observation", "latent must have 12 entries, got " + z.shape_str());
  }
  num::Tensor obs({kObservationDim});
  for (int j = 0; j < wm::kLatentDim; ++j) obs[j] = z[j];
  obs[wm::kLatentDim] = static_cast<double>(position) / max_position;
  return obs;
}

}  // namespace lobirl::env

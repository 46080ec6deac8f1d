#pragma once

#include <cstdint>
#include <vector>

#include "lobirl/num/tensor.hpp"
#include "lobirl/wm/autoencoder.hpp"

namespace lobirl::env {

/// Unit trade actions; position changes by -1, 0, +1 and is clamped at
/// +/- max_position.
enum class Action : int { sell = 0, hold = 1, buy = 2 };
inline constexpr int kActionCount = 3;
inline int action_delta(Action a) { return static_cast<int>(a) - 1; }

/// Observation fed to every agent: latent state plus normalized position.
inline constexpr int kObservationDim = wm::kLatentDim + 1;

struct EnvConfig {
  double gamma = 0.99;
  int episode_len = 1000;
  int max_position = 5;
  double trade_cost = 0.002;  // per unit traded, price units
  double temperature = 1.0;   // dream-mode sampling temperature
  std::uint64_t seed = 0;

  void validate() const;  // throws std::invalid_argument
};

struct StepResult {
  num::Tensor observation;  // [kObservationDim]
  double reward = 0.0;
  bool done = false;
  double info_mid = 0.0;     // true mid price in replay mode, 0 in dream mode
  bool has_info_mid = false;
};

/// Episodic MDP interface. reset() must be called before step(); stepping a
/// finished episode is an error.
class Environment {
 public:
  virtual ~Environment() = default;

  virtual num::Tensor reset(std::uint64_t seed) = 0;
  virtual StepResult step(Action a) = 0;

  virtual const EnvConfig& config() const = 0;
  virtual int position() const = 0;
  virtual int step_index() const = 0;
};

/// Discounted return sum(gamma^t * r_t).
double episode_return(const std::vector<double>& rewards, double gamma);

num::Tensor make_observation(const num::Tensor& z, int position, int max_position);

}  // namespace lobirl::env

#pragma once

#include <cstdint>
#include <vector>

#include "lobirl/agents/policy.hpp"
#include "lobirl/env/env.hpp"

namespace lobirl::agents {

struct EpisodeTrace {
  std::vector<num::Tensor> observations;  // pre-step observation per step
  std::vector<int> actions;
  std::vector<double> rewards;
  double undiscounted_return = 0.0;
};

/// Plays one full episode; the environment and the policy's action sampling
/// are seeded independently off `seed`, so traces are reproducible.
EpisodeTrace run_episode(env::Environment& environment, const Policy& policy, std::uint64_t seed,
                         bool record_observations = true);

/// Mean undiscounted return over `episodes` rollouts with disjoint seeds
/// seed, seed+1, ...
double mean_return(env::Environment& environment, const Policy& policy, int episodes, std::uint64_t seed);

}  // namespace lobirl::agents

#include "lobirl/agents/rollout.hpp"

namespace lobirl::agents {

EpisodeTrace run_episode(env::Environment& environment, const Policy& policy, std::uint64_t seed,
                         bool record_observations) {
  EpisodeTrace trace;
  num::Tensor obs = environment.reset(seed);
  num::Rng action_rng(num::derive_seed(seed, "rollout-actions"));
  bool done = false;
  while (!done) {
    const env::Action a = policy.act(obs, action_rng);
    if (record_observations) trace.observations.push_back(obs);
    trace.actions.push_back(static_cast<int>(a));
    const env::StepResult r = environment.step(a);
    trace.rewards.push_back(r.reward);
    trace.undiscounted_return += r.reward;
    obs = r.observation;
    done = r.done;
  }
  return trace;
}

double mean_return(env::Environment& environment, const Policy& policy, int episodes, std::uint64_t seed) {
  double total = 0.0;
  for (int e = 0; e < episodes; ++e) {
    total += run_episode(environment, policy, seed + static_cast<std::uint64_t>(e), false).undiscounted_return;
  }
  return total / episodes;
}

}  // namespace lobirl::agents

#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "lobirl/agents/policy.hpp"
#include "lobirl/env/env.hpp"

namespace lobirl::agents {

inline constexpr int kTrajectoryLength = 1000;
inline constexpr int kDefaultTrajectoryCount = 100;

/// One expert demonstration: exactly 1000 (observation, action) pairs.
struct Trajectory {
  std::vector<std::array<double, env::kObservationDim>> observations;
  std::vector<std::uint8_t> actions;
  double total_return = 0.0;  // undiscounted
  std::string agent;
  std::uint64_t seed = 0;

  void validate() const;  // throws on broken shape invariants
};

struct TrajectorySet {
  std::string agent;
  std::vector<Trajectory> items;

  void validate() const;
  std::size_t pair_count() const { return items.size() * kTrajectoryLength; }
};

/// Runs the trained policy for `count` episodes of exactly `length` steps.
/// The environment's episode_len must equal `length`. Episode e is seeded
/// seed + e.
TrajectorySet collect_trajectories(env::Environment& environment, const Policy& policy, const std::string& agent,
                                   int count, int length, std::uint64_t seed);

/// Line-delimited JSON, schema lobirl-trajectories-v1: first line is a header
/// {"format", "agent", "count"}, then one trajectory object per line
/// {"obs": [[f64 x 13] x 1000], "act": [u8 x 1000], "ret", "seed"}.
void save_trajectories(const std::filesystem::path& path, const TrajectorySet& set);
TrajectorySet load_trajectories(const std::filesystem::path& path);

}  // namespace lobirl::agents

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "lobirl/env/env.hpp"
#include "lobirl/num/layers.hpp"
#include "lobirl/num/rng.hpp"

namespace lobirl::agents {

/// Evaluation-time policy: observation in, action out.
class Policy {
 public:
  virtual ~Policy() = default;
  virtual env::Action act(const num::Tensor& obs, num::Rng& rng) const = 0;
};

class RandomPolicy final : public Policy {
 public:
  env::Action act(const num::Tensor&, num::Rng& rng) const override {
    return static_cast<env::Action>(rng.uniform_int(0, env::kActionCount - 1));
  }
};

/// Softmax policy network with an optional value head on a shared trunk:
/// obs -> 64 -> 64 (tanh), logits head -> |A|, value head -> 1.
struct PolicyNet {
  num::Mlp trunk;
  num::DenseLayer pi_head;
  num::DenseLayer v_head;
  bool has_value_head = true;

  PolicyNet() = default;
  PolicyNet(const std::string& name, std::uint64_t seed, bool with_value_head);

  /// [B x obs] -> [B x |A|] logits (inference).
  num::Tensor logits(const num::Tensor& obs) const;
  /// Action probabilities for one observation, [|A|].
  num::Tensor action_probs(const num::Tensor& obs) const;
  double value(const num::Tensor& obs) const;

  num::Tape::Id logits_graph(num::Tape& t, num::Tape::Id obs);
  num::Tape::Id value_graph(num::Tape& t, num::Tape::Id obs);

  env::Action sample_action(const num::Tensor& obs, num::Rng& rng) const;

  std::vector<num::Parameter*> parameters();
};

/// Samples from the softmax distribution; the evaluation policy for A2C/PG.
class SampledPolicy final : public Policy {
 public:
  explicit SampledPolicy(const PolicyNet* net) : net_(net) {}
  env::Action act(const num::Tensor& obs, num::Rng& rng) const override { return net_->sample_action(obs, rng); }

 private:
  const PolicyNet* net_;
};

/// Q-network pair for double DQN: online net plus a target copy synced at
/// fixed step intervals.
struct QNet {
  num::Mlp online;
  num::Mlp target;

  QNet() = default;
  QNet(const std::string& name, std::uint64_t seed);

  num::Tensor q_values(const num::Tensor& obs) const { return online.forward(obs); }
  int greedy_action(const num::Tensor& obs) const;
  void sync_target();

  std::vector<num::Parameter*> parameters() { return online.parameters(); }
};

/// Greedy argmax over online Q-values; the evaluation policy for DQN.
class GreedyQPolicy final : public Policy {
 public:
  explicit GreedyQPolicy(const QNet* net) : net_(net) {}
  env::Action act(const num::Tensor& obs, num::Rng&) const override {
    return static_cast<env::Action>(net_->greedy_action(obs));
  }

 private:
  const QNet* net_;
};

}  // namespace lobirl::agents

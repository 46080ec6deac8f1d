#include "lobirl/agents/policy.hpp"

namespace lobirl::agents {

using num::Activation;
using num::Tensor;

PolicyNet::PolicyNet(const std::string& name, std::uint64_t seed, bool with_value_head) : has_value_head(with_value_head) {
  num::Rng rng(seed);
  trunk = num::Mlp(name + ".trunk", {env::kObservationDim, 64, 64}, Activation::tanh, Activation::tanh, rng);
  pi_head = num::DenseLayer(name + ".pi", 64, env::kActionCount, Activation::identity, rng);
  v_head = num::DenseLayer(name + ".v", 64, 1, Activation::identity, rng);
}

Tensor PolicyNet::logits(const Tensor& obs) const {
  const Tensor features = trunk.forward(obs.rank() == 1 ? obs.reshaped({1, static_cast<int>(obs.size())}) : obs);
  return pi_head.forward(features);
}

Tensor PolicyNet::action_probs(const Tensor& obs) const {
  return num::softmax_rows(logits(obs)).reshaped({env::kActionCount});
}

double PolicyNet::value(const Tensor& obs) const {
  const Tensor features = trunk.forward(obs.rank() == 1 ? obs.reshaped({1, static_cast<int>(obs.size())}) : obs);
  return v_head.forward(features)[0];
}

num::Tape::Id PolicyNet::logits_graph(num::Tape& t, num::Tape::Id obs) { return pi_head.forward(t, trunk.forward(t, obs)); }

num::Tape::Id PolicyNet::value_graph(num::Tape& t, num::Tape::Id obs) { return v_head.forward(t, trunk.forward(t, obs)); }

env::Action PolicyNet::sample_action(const Tensor& obs, num::Rng& rng) const {
  const Tensor p = action_probs(obs);
  return static_cast<env::Action>(rng.categorical(p.data(), env::kActionCount));
}

std::vector<num::Parameter*> PolicyNet::parameters() {
  std::vector<num::Parameter*> out = trunk.parameters();
  pi_head.collect(out);
  if (has_value_head) v_head.collect(out);
  return out;
}

QNet::QNet(const std::string& name, std::uint64_t seed) {
  num::Rng rng(seed);
  online = num::Mlp(name + ".online", {env::kObservationDim, 64, 64, env::kActionCount}, Activation::tanh,
                    Activation::identity, rng);
  target = num::Mlp(name + ".target", {env::kObservationDim, 64, 64, env::kActionCount}, Activation::tanh,
                    Activation::identity, rng);
  sync_target();
}

int QNet::greedy_action(const Tensor& obs) const {
  const Tensor q = q_values(obs.rank() == 1 ? obs.reshaped({1, static_cast<int>(obs.size())}) : obs);
  int best = 0;
  for (int a = 1; a < env::kActionCount; ++a) {
    if (q[a] > q[best]) best = a;
  }
  return best;
}

void QNet::sync_target() {
  auto src = online.parameters();
  auto dst = target.parameters();
  for (std::size_t i = 0; i < src.size(); ++i) dst[i]->value = src[i]->value;
}

}  // namespace lobirl::agents

#pragma once

#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "lobirl/num/tensor.hpp"

namespace lobirl::num {

/// Named trainable tensor with a persistent gradient accumulator. Gradients
/// accumulate across backward passes until zero_grad(), so multi-batch
/// accumulation works without extra machinery.
struct Parameter {
  std::string name;
  Tensor value;
  Tensor grad;

  Parameter() = default;
  Parameter(std::string n, Tensor v) : name(std::move(n)), value(std::move(v)), grad(value.shape()) {}

  void zero_grad() { grad.fill(0.0); }
  std::int64_t size() const { return value.size(); }
};

/// Reverse-mode tape. Ops append nodes in execution order, which is already a
/// topological order, so backward() is a single reverse sweep that visits each
/// node exactly once. Per-node gradient accumulators are zeroed at the start
/// of every backward call; parameter gradients accumulate across calls via the
/// leaf bindings.
///
/// Models rebuild the same fixed topology once per training step; a Tape is
/// cleared and reused rather than shared between steps.
class Tape {
 public:
  using Id = int;

  Tape() = default;
  Tape(const Tape&) = delete;
  Tape& operator=(const Tape&) = delete;

  // ---- leaves ----
  Id constant(Tensor v);             // not differentiated through
  Id input(Tensor v);                // tracked leaf, gradient readable
  Id param(Parameter& p);            // tracked leaf bound to p

  // ---- elementwise ----
  Id add(Id a, Id b);
  Id sub(Id a, Id b);
  Id mul(Id a, Id b);
  Id neg(Id a);
  Id scale(Id a, double s);
  Id add_scalar(Id a, double s);
  Id tanh(Id a);
  Id relu(Id a);
  Id sigmoid(Id a);
  Id exp(Id a);
  Id log(Id a);
  Id softplus(Id a);
  Id clamp(Id a, double lo, double hi);
  Id square(Id a);

  // ---- linear algebra (rank-2 operands) ----
  Id matmul(Id a, Id b);
  Id affine(Id x, Id w, Id b);  // x*W + row-broadcast bias

  // ---- rowwise ----
  Id softmax_rows(Id a);
  Id log_softmax_rows(Id a);
  Id logsumexp_rows(Id a);
  Id row_sums(Id a);

  // ---- reductions ----
  Id sum_all(Id a);   // -> [1]
  Id mean_all(Id a);  // -> [1]

  // ---- structure ----
  Id reshape(Id a, std::vector<int> shape);
  Id concat_cols(Id a, Id b);
  Id slice_cols(Id a, int c0, int c1);
  Id select_cols(Id a, std::vector<int> idx);  // per-row gather -> [m x 1]
  Id add_col(Id a, Id c);
  Id stop_grad(Id a);

  /// Zeroes all node accumulators, seeds 1 at the scalar root, runs the
  /// reverse sweep, then adds leaf gradients into their bound parameters.
  void backward(Id root);

  const Tensor& value(Id id) const { return nodes_[check(id)].value; }
  const Tensor& grad(Id id) const;
  bool tracked(Id id) const { return nodes_[check(id)].tracked; }
  int node_count() const { return static_cast<int>(nodes_.size()); }
  void clear();

 private:
  struct Node {
    Tensor value;
    Tensor grad;
    bool tracked = false;
    std::function<void(Tape&)> backprop;
  };

  std::size_t check(Id id) const;
  Id push(Tensor v, bool tracked, std::function<void(Tape&)> fn);
  void accumulate(Id id, const Tensor& g);

  std::vector<Node> nodes_;
  std::vector<std::pair<Id, Parameter*>> bound_;
};

}  // namespace lobirl::num

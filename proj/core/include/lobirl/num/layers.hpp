#pragma once

#include <string>
#include <vector>

#include "lobirl/num/rng.hpp"
#include "lobirl/num/tape.hpp"
#include "lobirl/num/tensor.hpp"

namespace lobirl::num {

enum class Activation { identity, tanh, relu, softmax, softplus, exp };

Tensor apply_activation(const Tensor& x, Activation act);
Tape::Id apply_activation(Tape& t, Tape::Id x, Activation act);

/// Xavier-uniform init on [-limit, limit] with limit = sqrt(6 / (fan_in + fan_out)).
Tensor xavier_uniform(int fan_in, int fan_out, Rng& rng);

/// Fully connected layer, weights [in x out], bias [out].
struct DenseLayer {
  Parameter weights;
  Parameter bias;
  Activation activation = Activation::identity;

  DenseLayer() = default;
  DenseLayer(const std::string& name, int in, int out, Activation act, Rng& rng);

  int in_features() const { return weights.value.rows(); }
  int out_features() const { return weights.value.cols(); }

  Tensor forward(const Tensor& x) const;
  Tape::Id forward(Tape& t, Tape::Id x);

  void collect(std::vector<Parameter*>& out);
};

/// Dense stack. widths = {in, h1, ..., out}; hidden layers use `hidden`,
/// the last layer uses `output`.
struct Mlp {
  std::vector<DenseLayer> layers;

  Mlp() = default;
  Mlp(const std::string& name, const std::vector<int>& widths, Activation hidden, Activation output, Rng& rng);

  int in_features() const { return layers.front().in_features(); }
  int out_features() const { return layers.back().out_features(); }

  Tensor forward(const Tensor& x) const;
  Tape::Id forward(Tape& t, Tape::Id x);

  std::vector<Parameter*> parameters();
};

/// Gated recurrent cell with a single update gate:
///   [u_pre | c_pre] = x*W + h*U + b        (fused [.. x 2H] parameterization)
///   u  = sigmoid(u_pre)
///   c  = tanh(c_pre)
///   h' = (1 - u) .* h + u .* c
struct RecurrentCell {
  int input_size = 0;
  int hidden_size = 0;
  Parameter w_in;   // [input x 2H]
  Parameter w_rec;  // [H x 2H]
  Parameter bias;   // [2H]

  RecurrentCell() = default;
  RecurrentCell(const std::string& name, int input, int hidden, Rng& rng);

  /// x [B x input], h [B x H] -> [B x H].
  Tensor step(const Tensor& x, const Tensor& h) const;
  Tape::Id step(Tape& t, Tape::Id x, Tape::Id h);

  Tensor initial_state(int batch) const { return Tensor({batch, hidden_size}); }
  std::vector<Parameter*> parameters();
};

double global_grad_norm(const std::vector<Parameter*>& params);
/// Scales all gradients down so the global L2 norm is at most max_norm.
void clip_global_norm(const std::vector<Parameter*>& params, double max_norm);

}  // namespace lobirl::num

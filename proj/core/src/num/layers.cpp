#include "lobirl/num/layers.hpp"

#include <cmath>
#include <stdexcept>

namespace lobirl::num {

Tensor apply_activation(const Tensor& x, Activation act) {
  switch (act) {
    case Activation::identity: return x;
    case Activation::tanh: return num::tanh(x);
    case Activation::relu: return num::relu(x);
    case Activation::softmax: return num::softmax_rows(x);
    case Activation::softplus: return num::softplus(x);
    case Activation::exp: return num::exp(x);
  }
  throw std::logic_error("apply_activation: unknown activation");
}

Tape::Id apply_activation(Tape& t, Tape::Id x, Activation act) {
  switch (act) {
    case Activation::identity: return x;
    case Activation::tanh: return t.tanh(x);
    case Activation::relu: return t.relu(x);
    case Activation::softmax: return t.softmax_rows(x);
    case Activation::softplus: return t.softplus(x);
    case Activation::exp: return t.exp(x);
  }
  throw std::logic_error("apply_activation: unknown activation");
}

Tensor xavier_uniform(int fan_in, int fan_out, Rng& rng) {
  const double limit = std::sqrt(6.0 / (fan_in + fan_out));
  Tensor w({fan_in, fan_out});
  for (std::int64_t i = 0; i < w.size(); ++i) w[i] = rng.uniform(-limit, limit);
  return w;
}

DenseLayer::DenseLayer(const std::string& name, int in, int out, Activation act, Rng& rng)
    : weights(name + ".W", xavier_uniform(in, out, rng)), bias(name + ".b", Tensor({out})), activation(act) {}

Tensor DenseLayer::forward(const Tensor& x) const {
  return apply_activation(affine(x, weights.value, bias.value), activation);
}

Tape::Id DenseLayer::forward(Tape& t, Tape::Id x) {
  return apply_activation(t, t.affine(x, t.param(weights), t.param(bias)), activation);
}

void DenseLayer::collect(std::vector<Parameter*>& out) {
  out.push_back(&weights);
  out.push_back(&bias);
}

Mlp::Mlp(const std::string& name, const std::vector<int>& widths, Activation hidden, Activation output, Rng& rng) {
  if (widths.size() < 2) throw std::invalid_argument("Mlp: need at least input and output widths");
  for (std::size_t i = 0; i + 1 < widths.size(); ++i) {
    const bool last = (i + 2 == widths.size());
    layers.emplace_back(name + ".l" + std::to_string(i), widths[i], widths[i + 1], last ? output : hidden, rng);
  }
}

Tensor Mlp::forward(const Tensor& x) const {
  Tensor h = x;
  for (const DenseLayer& l : layers) h = l.forward(h);
  return h;
}

Tape::Id Mlp::forward(Tape& t, Tape::Id x) {
  Tape::Id h = x;
  for (DenseLayer& l : layers) h = l.forward(t, h);
  return h;
}

std::vector<Parameter*> Mlp::parameters() {
  std::vector<Parameter*> out;
  for (DenseLayer& l : layers) l.collect(out);
  return out;
}

RecurrentCell::RecurrentCell(const std::string& name, int input, int hidden, Rng& rng)
    : input_size(input),
      hidden_size(hidden),
      w_in(name + ".W", xavier_uniform(input, 2 * hidden, rng)),
      w_rec(name + ".U", xavier_uniform(hidden, 2 * hidden, rng)),
      bias(name + ".b", Tensor({2 * hidden})) {}

Tensor RecurrentCell::step(const Tensor& x, const Tensor& h) const {
  require_rank2("RecurrentCell::step", x);
  require_rank2("RecurrentCell::step", h);
  if (x.cols() != input_size || h.cols() != hidden_size || x.rows() != h.rows()) {
    throw_shape_error("RecurrentCell::step", "x " + x.shape_str() + ", h " + h.shape_str() + " for cell " +
                                                 std::to_string(input_size) + "->" + std::to_string(hidden_size));
  }
  Tensor pre = add(affine(x, w_in.value, bias.value), matmul(h, w_rec.value));
  const Tensor u = num::sigmoid(slice_cols(pre, 0, hidden_size));
  const Tensor c = num::tanh(slice_cols(pre, hidden_size, 2 * hidden_size));
  Tensor out(h.shape());
  for (std::int64_t i = 0; i < out.size(); ++i) out[i] = (1.0 - u[i]) * h[i] + u[i] * c[i];
  return out;
}

Tape::Id Tape_cell_step(Tape& t, RecurrentCell& cell, Tape::Id x, Tape::Id h) {
  const Tape::Id pre = t.add(t.affine(x, t.param(cell.w_in), t.param(cell.bias)), t.matmul(h, t.param(cell.w_rec)));
  const Tape::Id u = t.sigmoid(t.slice_cols(pre, 0, cell.hidden_size));
  const Tape::Id c = t.tanh(t.slice_cols(pre, cell.hidden_size, 2 * cell.hidden_size));
  // h + u .* (c - h)
  return t.add(h, t.mul(u, t.sub(c, h)));
}

Tape::Id RecurrentCell::step(Tape& t, Tape::Id x, Tape::Id h) {
  if (t.value(x).cols() != input_size || t.value(h).cols() != hidden_size) {
    throw_shape_error("RecurrentCell::step", "x " + t.value(x).shape_str() + ", h " + t.value(h).shape_str());
  }
  return Tape_cell_step(t, *this, x, h);
}

std::vector<Parameter*> RecurrentCell::parameters() { return {&w_in, &w_rec, &bias}; }

double global_grad_norm(const std::vector<Parameter*>& params) {
  double sq = 0.0;
  for (const Parameter* p : params)
    for (std::int64_t i = 0; i < p->grad.size(); ++i) sq += p->grad[i] * p->grad[i];
  return std::sqrt(sq);
}

void clip_global_norm(const std::vector<Parameter*>& params, double max_norm) {
  const double norm = global_grad_norm(params);
  if (norm <= max_norm || norm == 0.0) return;
  const double s = max_norm / norm;
  for (Parameter* p : params)
    for (std::int64_t i = 0; i < p->grad.size(); ++i) p->grad[i] *= s;
}

}  // namespace lobirl::num

#include "lobirl/num/tape.hpp"

#include <cmath>
#include <stdexcept>

namespace lobirl::num {

std::size_t Tape::check(Id id) const {
  if (id < 0 || id >= static_cast<Id>(nodes_.size())) {
    throw std::invalid_argument("Tape: invalid node id " + std::to_string(id));
  }
  return static_cast<std::size_t>(id);
}

Tape::Id Tape::push(Tensor v, bool tracked, std::function<void(Tape&)> fn) {
  Node n;
  n.value = std::move(v);
  if (tracked) {
    n.grad = Tensor(n.value.shape());
    n.backprop = std::move(fn);
  }
  n.tracked = tracked;
  nodes_.push_back(std::move(n));
  return static_cast<Id>(nodes_.size() - 1);
}

void Tape::accumulate(Id id, const Tensor& g) {
  Node& n = nodes_[check(id)];
  if (!n.tracked) return;
  double* dst = n.grad.data();
  const double* src = g.data();
  for (std::int64_t i = 0; i < g.size(); ++i) dst[i] += src[i];
}

const Tensor& Tape::grad(Id id) const {
  const Node& n = nodes_[check(id)];
  if (!n.tracked) throw std::invalid_argument("Tape::grad: node is not tracked");
  return n.grad;
}

void Tape::clear() {
  nodes_.clear();
  bound_.clear();
}

Tape::Id Tape::constant(Tensor v) { return push(std::move(v), false, nullptr); }

Tape::Id Tape::input(Tensor v) { return push(std::move(v), true, nullptr); }

Tape::Id Tape::param(Parameter& p) {
  const Id id = push(p.value, true, nullptr);
  bound_.emplace_back(id, &p);
  return id;
}

void Tape::backward(Id root) {
  Node& r = nodes_[check(root)];
  if (r.value.size() != 1) {
    throw_shape_error("backward", "root must be scalar, got " + r.value.shape_str());
  }
  if (!r.tracked) {
    throw std::invalid_argument("Tape::backward: root does not depend on any tracked leaf; run a forward pass first");
  }
  for (Node& n : nodes_) {
    if (n.tracked) n.grad.fill(0.0);
  }
  r.grad[0] = 1.0;
  for (auto it = nodes_.rbegin(); it != nodes_.rend(); ++it) {
    if (it->tracked && it->backprop) it->backprop(*this);
  }
  for (auto& [id, p] : bound_) {
    const Tensor& g = nodes_[static_cast<std::size_t>(id)].grad;
    double* dst = p->grad.data();
    for (std::int64_t i = 0; i < g.size(); ++i) dst[i] += g[i];
  }
}

// ---- elementwise -----------------------------------------------------------

Tape::Id Tape::add(Id a, Id b) {
  Tensor out = num::add(value(a), value(b));
  const bool tr = tracked(a) || tracked(b);
  const Id id = push(std::move(out), tr, nullptr);
  if (tr) {
    nodes_[static_cast<std::size_t>(id)].backprop = [id, a, b](Tape& t) {
      const Tensor& g = t.nodes_[static_cast<std::size_t>(id)].grad;
      t.accumulate(a, g);
      t.accumulate(b, g);
    };
  }
  return id;
}

Tape::Id Tape::sub(Id a, Id b) {
  Tensor out = num::sub(value(a), value(b));
  const bool tr = tracked(a) || tracked(b);
  const Id id = push(std::move(out), tr, nullptr);
  if (tr) {
    nodes_[static_cast<std::size_t>(id)].backprop = [id, a, b](Tape& t) {
      const Tensor& g = t.nodes_[static_cast<std::size_t>(id)].grad;
      t.accumulate(a, g);
      t.accumulate(b, num::neg(g));
    };
  }
  return id;
}

Tape::Id Tape::mul(Id a, Id b) {
  Tensor out = num::mul(value(a), value(b));
  const bool tr = tracked(a) || tracked(b);
  const Id id = push(std::move(out), tr, nullptr);
  if (tr) {
    nodes_[static_cast<std::size_t>(id)].backprop = [id, a, b](Tape& t) {
      const Tensor& g = t.nodes_[static_cast<std::size_t>(id)].grad;
      t.accumulate(a, num::mul(g, t.value(b)));
      t.accumulate(b, num::mul(g, t.value(a)));
    };
  }
  return id;
}

Tape::Id Tape::neg(Id a) { return scale(a, -1.0); }

Tape::Id Tape::scale(Id a, double s) {
  Tensor out = num::scale(value(a), s);
  const bool tr = tracked(a);
  const Id id = push(std::move(out), tr, nullptr);
  if (tr) {
    nodes_[static_cast<std::size_t>(id)].backprop = [id, a, s](Tape& t) {
      t.accumulate(a, num::scale(t.nodes_[static_cast<std::size_t>(id)].grad, s));
    };
  }
  return id;
}

Tape::Id Tape::add_scalar(Id a, double s) {
  Tensor out = num::add_scalar(value(a), s);
  const bool tr = tracked(a);
  const Id id = push(std::move(out), tr, nullptr);
  if (tr) {
    nodes_[static_cast<std::size_t>(id)].backprop = [id, a](Tape& t) {
      t.accumulate(a, t.nodes_[static_cast<std::size_t>(id)].grad);
    };
  }
  return id;
}

Tape::Id Tape::tanh(Id a) {
  Tensor out = num::tanh(value(a));
  const bool tr = tracked(a);
  const Id id = push(std::move(out), tr, nullptr);
  if (tr) {
    nodes_[static_cast<std::size_t>(id)].backprop = [id, a](Tape& t) {
      const Tensor& y = t.value(id);
      const Tensor& g = t.nodes_[static_cast<std::size_t>(id)].grad;
      Tensor gx(y.shape());
      for (std::int64_t i = 0; i < y.size(); ++i) gx[i] = g[i] * (1.0 - y[i] * y[i]);
      t.accumulate(a, gx);
    };
  }
  return id;
}

Tape::Id Tape::relu(Id a) {
  Tensor out = num::relu(value(a));
  const bool tr = tracked(a);
  const Id id = push(std::move(out), tr, nullptr);
  if (tr) {
    nodes_[static_cast<std::size_t>(id)].backprop = [id, a](Tape& t) {
      const Tensor& x = t.value(a);
      const Tensor& g = t.nodes_[static_cast<std::size_t>(id)].grad;
      Tensor gx(x.shape());
      for (std::int64_t i = 0; i < x.size(); ++i) gx[i] = x[i] > 0.0 ? g[i] : 0.0;
      t.accumulate(a, gx);
    };
  }
  return id;
}

Tape::Id Tape::sigmoid(Id a) {
  Tensor out = num::sigmoid(value(a));
  const bool tr = tracked(a);
  const Id id = push(std::move(out), tr, nullptr);
  if (tr) {
    nodes_[static_cast<std::size_t>(id)].backprop = [id, a](Tape& t) {
      const Tensor& y = t.value(id);
      const Tensor& g = t.nodes_[static_cast<std::size_t>(id)].grad;
      Tensor gx(y.shape());
      for (std::int64_t i = 0; i < y.size(); ++i) gx[i] = g[i] * y[i] * (1.0 - y[i]);
      t.accumulate(a, gx);
    };
  }
  return id;
}

Tape::Id Tape::exp(Id a) {
  Tensor out = num::exp(value(a));
  const bool tr = tracked(a);
  const Id id = push(std::move(out), tr, nullptr);
  if (tr) {
    nodes_[static_cast<std::size_t>(id)].backprop = [id, a](Tape& t) {
      t.accumulate(a, num::mul(t.nodes_[static_cast<std::size_t>(id)].grad, t.value(id)));
    };
  }
  return id;
}

Tape::Id Tape::log(Id a) {
  Tensor out = num::log(value(a));
  const bool tr = tracked(a);
  const Id id = push(std::move(out), tr, nullptr);
  if (tr) {
    nodes_[static_cast<std::size_t>(id)].backprop = [id, a](Tape& t) {
      const Tensor& x = t.value(a);
      const Tensor& g = t.nodes_[static_cast<std::size_t>(id)].grad;
      Tensor gx(x.shape());
      for (std::int64_t i = 0; i < x.size(); ++i) gx[i] = g[i] / x[i];
      t.accumulate(a, gx);
    };
  }
  return id;
}

Tape::Id Tape::softplus(Id a) {
  Tensor out = num::softplus(value(a));
  const bool tr = tracked(a);
  const Id id = push(std::move(out), tr, nullptr);
  if (tr) {
    nodes_[static_cast<std::size_t>(id)].backprop = [id, a](Tape& t) {
      const Tensor sig = num::sigmoid(t.value(a));
      t.accumulate(a, num::mul(t.nodes_[static_cast<std::size_t>(id)].grad, sig));
    };
  }
  return id;
}

Tape::Id Tape::clamp(Id a, double lo, double hi) {
  Tensor out = num::clamp(value(a), lo, hi);
  const bool tr = tracked(a);
  const Id id = push(std::move(out), tr, nullptr);
  if (tr) {
    nodes_[static_cast<std::size_t>(id)].backprop = [id, a, lo, hi](Tape& t) {
      const Tensor& x = t.value(a);
      const Tensor& g = t.nodes_[static_cast<std::size_t>(id)].grad;
      Tensor gx(x.shape());
      for (std::int64_t i = 0; i < x.size(); ++i) gx[i] = (x[i] > lo && x[i] < hi) ? g[i] : 0.0;
      t.accumulate(a, gx);
    };
  }
  return id;
}

Tape::Id Tape::square(Id a) {
  Tensor out = num::square(value(a));
  const bool tr = tracked(a);
  const Id id = push(std::move(out), tr, nullptr);
  if (tr) {
    nodes_[static_cast<std::size_t>(id)].backprop = [id, a](Tape& t) {
      const Tensor& x = t.value(a);
      const Tensor& g = t.nodes_[static_cast<std::size_t>(id)].grad;
      Tensor gx(x.shape());
      for (std::int64_t i = 0; i < x.size(); ++i) gx[i] = 2.0 * x[i] * g[i];
      t.accumulate(a, gx);
    };
  }
  return id;
}

// ---- linear algebra ---------------------------------------------------------

Tape::Id Tape::matmul(Id a, Id b) {
  Tensor out = num::matmul(value(a), value(b));
  const bool tr = tracked(a) || tracked(b);
  const Id id = push(std::move(out), tr, nullptr);
  if (tr) {
    nodes_[static_cast<std::size_t>(id)].backprop = [id, a, b](Tape& t) {
      const Tensor& g = t.nodes_[static_cast<std::size_t>(id)].grad;
      if (t.tracked(a)) t.accumulate(a, num::matmul(g, num::transpose(t.value(b))));
      if (t.tracked(b)) t.accumulate(b, num::matmul(num::transpose(t.value(a)), g));
    };
  }
  return id;
}

Tape::Id Tape::affine(Id x, Id w, Id b) {
  require_rank2("affine", value(x));
  Tensor out = num::affine(value(x), value(w), value(b));
  const bool tr = tracked(x) || tracked(w) || tracked(b);
  const Id id = push(std::move(out), tr, nullptr);
  if (tr) {
    nodes_[static_cast<std::size_t>(id)].backprop = [id, x, w, b](Tape& t) {
      const Tensor& g = t.nodes_[static_cast<std::size_t>(id)].grad;
      if (t.tracked(x)) t.accumulate(x, num::matmul(g, num::transpose(t.value(w))));
      if (t.tracked(w)) t.accumulate(w, num::matmul(num::transpose(t.value(x)), g));
      if (t.tracked(b)) t.accumulate(b, num::col_sums(g));
    };
  }
  return id;
}

// ---- rowwise ----------------------------------------------------------------

Tape::Id Tape::softmax_rows(Id a) {
  Tensor out = num::softmax_rows(value(a));
  const bool tr = tracked(a);
  const Id id = push(std::move(out), tr, nullptr);
  if (tr) {
    nodes_[static_cast<std::size_t>(id)].backprop = [id, a](Tape& t) {
      const Tensor& y = t.value(id);
      const Tensor& g = t.nodes_[static_cast<std::size_t>(id)].grad;
      const int m = y.rows(), n = y.cols();
      Tensor gx(y.shape());
      for (int i = 0; i < m; ++i) {
        double dot = 0.0;
        for (int j = 0; j < n; ++j) dot += g[static_cast<std::int64_t>(i) * n + j] * y[static_cast<std::int64_t>(i) * n + j];
        for (int j = 0; j < n; ++j) {
          const std::int64_t k = static_cast<std::int64_t>(i) * n + j;
          gx[k] = y[k] * (g[k] - dot);
        }
      }
      t.accumulate(a, gx);
    };
  }
  return id;
}

Tape::Id Tape::log_softmax_rows(Id a) {
  Tensor out = num::log_softmax_rows(value(a));
  const bool tr = tracked(a);
  const Id id = push(std::move(out), tr, nullptr);
  if (tr) {
    nodes_[static_cast<std::size_t>(id)].backprop = [id, a](Tape& t) {
      const Tensor& y = t.value(id);  // log-probabilities
      const Tensor& g = t.nodes_[static_cast<std::size_t>(id)].grad;
      const int m = y.rows(), n = y.cols();
      Tensor gx(y.shape());
      for (int i = 0; i < m; ++i) {
        double gsum = 0.0;
        for (int j = 0; j < n; ++j) gsum += g[static_cast<std::int64_t>(i) * n + j];
        for (int j = 0; j < n; ++j) {
          const std::int64_t k = static_cast<std::int64_t>(i) * n + j;
          gx[k] = g[k] - std::exp(y[k]) * gsum;
        }
      }
      t.accumulate(a, gx);
    };
  }
  return id;
}

Tape::Id Tape::logsumexp_rows(Id a) {
  Tensor out = num::logsumexp_rows(value(a));
  const bool tr = tracked(a);
  const Id id = push(std::move(out), tr, nullptr);
  if (tr) {
    nodes_[static_cast<std::size_t>(id)].backprop = [id, a](Tape& t) {
      const Tensor& x = t.value(a);
      const Tensor& lse = t.value(id);
      const Tensor& g = t.nodes_[static_cast<std::size_t>(id)].grad;
      const int m = x.rows(), n = x.cols();
      Tensor gx(x.shape());
      for (int i = 0; i < m; ++i)
        for (int j = 0; j < n; ++j) gx(i, j) = g(i, 0) * std::exp(x(i, j) - lse(i, 0));
      t.accumulate(a, gx);
    };
  }
  return id;
}

Tape::Id Tape::row_sums(Id a) {
  Tensor out = num::row_sums(value(a));
  const bool tr = tracked(a);
  const Id id = push(std::move(out), tr, nullptr);
  if (tr) {
    nodes_[static_cast<std::size_t>(id)].backprop = [id, a](Tape& t) {
      const Tensor& x = t.value(a);
      const Tensor& g = t.nodes_[static_cast<std::size_t>(id)].grad;
      Tensor gx(x.shape());
      const int m = x.rows(), n = x.cols();
      for (int i = 0; i < m; ++i)
        for (int j = 0; j < n; ++j) gx(i, j) = g(i, 0);
      t.accumulate(a, gx);
    };
  }
  return id;
}

// ---- reductions ---------------------------------------------------------------

Tape::Id Tape::sum_all(Id a) {
  Tensor out({1});
  out[0] = num::sum(value(a));
  const bool tr = tracked(a);
  const Id id = push(std::move(out), tr, nullptr);
  if (tr) {
    nodes_[static_cast<std::size_t>(id)].backprop = [id, a](Tape& t) {
      const double g = t.nodes_[static_cast<std::size_t>(id)].grad[0];
      t.accumulate(a, Tensor::full(t.value(a).shape(), g));
    };
  }
  return id;
}

Tape::Id Tape::mean_all(Id a) {
  const double n = static_cast<double>(value(a).size());
  Tensor out({1});
  out[0] = num::sum(value(a)) / n;
  const bool tr = tracked(a);
  const Id id = push(std::move(out), tr, nullptr);
  if (tr) {
    nodes_[static_cast<std::size_t>(id)].backprop = [id, a, n](Tape& t) {
      const double g = t.nodes_[static_cast<std::size_t>(id)].grad[0];
      t.accumulate(a, Tensor::full(t.value(a).shape(), g / n));
    };
  }
  return id;
}

// ---- structure ---------------------------------------------------------------

Tape::Id Tape::reshape(Id a, std::vector<int> shape) {
  Tensor out = value(a).reshaped(shape);
  const bool tr = tracked(a);
  const Id id = push(std::move(out), tr, nullptr);
  if (tr) {
    nodes_[static_cast<std::size_t>(id)].backprop = [id, a](Tape& t) {
      t.accumulate(a, t.nodes_[static_cast<std::size_t>(id)].grad.reshaped(t.value(a).shape()));
    };
  }
  return id;
}

Tape::Id Tape::concat_cols(Id a, Id b) {
  Tensor out = num::concat_cols(value(a), value(b));
  const bool tr = tracked(a) || tracked(b);
  const Id id = push(std::move(out), tr, nullptr);
  if (tr) {
    const int na = value(a).cols();
    nodes_[static_cast<std::size_t>(id)].backprop = [id, a, b, na](Tape& t) {
      const Tensor& g = t.nodes_[static_cast<std::size_t>(id)].grad;
      t.accumulate(a, num::slice_cols(g, 0, na));
      t.accumulate(b, num::slice_cols(g, na, g.cols()));
    };
  }
  return id;
}

Tape::Id Tape::slice_cols(Id a, int c0, int c1) {
  Tensor out = num::slice_cols(value(a), c0, c1);
  const bool tr = tracked(a);
  const Id id = push(std::move(out), tr, nullptr);
  if (tr) {
    nodes_[static_cast<std::size_t>(id)].backprop = [id, a, c0, c1](Tape& t) {
      const Tensor& g = t.nodes_[static_cast<std::size_t>(id)].grad;
      Tensor gx(t.value(a).shape());
      for (int i = 0; i < g.rows(); ++i)
        for (int j = c0; j < c1; ++j) gx(i, j) = g(i, j - c0);
      t.accumulate(a, gx);
    };
  }
  return id;
}

Tape::Id Tape::select_cols(Id a, std::vector<int> idx) {
  Tensor out = num::select_cols(value(a), idx);
  const bool tr = tracked(a);
  const Id id = push(std::move(out), tr, nullptr);
  if (tr) {
    nodes_[static_cast<std::size_t>(id)].backprop = [id, a, idx = std::move(idx)](Tape& t) {
      const Tensor& g = t.nodes_[static_cast<std::size_t>(id)].grad;
      Tensor gx(t.value(a).shape());
      for (int i = 0; i < g.rows(); ++i) gx(i, idx[static_cast<std::size_t>(i)]) = g(i, 0);
      t.accumulate(a, gx);
    };
  }
  return id;
}

Tape::Id Tape::add_col(Id a, Id c) {
  Tensor out = num::add_col(value(a), value(c));
  const bool tr = tracked(a) || tracked(c);
  const Id id = push(std::move(out), tr, nullptr);
  if (tr) {
    nodes_[static_cast<std::size_t>(id)].backprop = [id, a, c](Tape& t) {
      const Tensor& g = t.nodes_[static_cast<std::size_t>(id)].grad;
      t.accumulate(a, g);
      if (t.tracked(c)) t.accumulate(c, num::row_sums(g).reshaped(t.value(c).shape()));
    };
  }
  return id;
}

Tape::Id Tape::stop_grad(Id a) { return constant(value(a)); }

}  // namespace lobirl::num

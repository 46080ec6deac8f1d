#include "lobirl/num/tensor.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace lobirl::num {

namespace {

std::int64_t shape_product(const std::vector<int>& shape) {
  std::int64_t n = 1;
  for (int d : shape) {
    if (d < 0) throw std::invalid_argument("Tensor: negative dimension");
    n *= d;
  }
  return n;
}

template <typename F>
Tensor map(const Tensor& a, F f) {
  Tensor out(a.shape());
  const double* src = a.data();
  double* dst = out.data();
  for (std::int64_t i = 0; i < a.size(); ++i) dst[i] = f(src[i]);
  return out;
}

template <typename F>
Tensor zip(const char* op, const Tensor& a, const Tensor& b, F f) {
  require_same_shape(op, a, b);
  Tensor out(a.shape());
  const double* pa = a.data();
  const double* pb = b.data();
  double* dst = out.data();
  for (std::int64_t i = 0; i < a.size(); ++i) dst[i] = f(pa[i], pb[i]);
  return out;
}

}  // namespace

Tensor::Tensor(std::vector<int> shape) : shape_(std::move(shape)) {
  data_.assign(static_cast<std::size_t>(shape_product(shape_)), 0.0);
}

Tensor::Tensor(std::vector<int> shape, std::vector<double> data) : shape_(std::move(shape)), data_(std::move(data)) {
  if (shape_product(shape_) != static_cast<std::int64_t>(data_.size())) {
    throw_shape_error("Tensor", "data length " + std::to_string(data_.size()) + " does not match shape " + shape_str());
  }
}

Tensor Tensor::full(std::vector<int> shape, double value) {
  Tensor t(std::move(shape));
  t.fill(value);
  return t;
}

Tensor Tensor::from(std::vector<double> values) {
  const int n = static_cast<int>(values.size());
  return Tensor({n}, std::move(values));
}

int Tensor::rows() const {
  if (rank() == 2) return shape_[0];
  if (rank() == 1) return 1;
  throw_shape_error("rows", "expected rank 1 or 2, got " + shape_str());
}

int Tensor::cols() const {
  if (rank() == 2) return shape_[1];
  if (rank() == 1) return shape_[0];
  throw_shape_error("cols", "expected rank 1 or 2, got " + shape_str());
}

bool Tensor::all_finite() const {
  for (double v : data_) {
    if (!std::isfinite(v)) return false;
  }
  return true;
}

void Tensor::fill(double value) { std::fill(data_.begin(), data_.end(), value); }

Tensor Tensor::reshaped(std::vector<int> new_shape) const {
  if (shape_product(new_shape) != size()) {
    throw_shape_error("reshape", shape_str() + " cannot be viewed with the requested element count");
  }
  return Tensor(std::move(new_shape), data_);
}

std::string Tensor::shape_str() const {
  std::ostringstream os;
  os << "[";
  for (std::size_t i = 0; i < shape_.size(); ++i) {
    if (i) os << "x";
    os << shape_[i];
  }
  os << "]";
  return os.str();
}

void throw_shape_error(const std::string& op, const std::string& detail) {
  throw std::invalid_argument(op + ": " + detail);
}

void require_same_shape(const char* op, const Tensor& a, const Tensor& b) {
  if (!a.same_shape(b)) {
    throw_shape_error(op, "shape mismatch " + a.shape_str() + " vs " + b.shape_str());
  }
}

void require_rank2(const char* op, const Tensor& a) {
  if (a.rank() != 2) throw_shape_error(op, "expected rank-2 tensor, got " + a.shape_str());
}

Tensor matmul(const Tensor& a, const Tensor& b) {
  require_rank2("matmul", a);
  require_rank2("matmul", b);
  if (a.cols() != b.rows()) {
    throw_shape_error("matmul", "inner dimensions " + a.shape_str() + " vs " + b.shape_str());
  }
  const int m = a.rows(), k = a.cols(), n = b.cols();
  Tensor out({m, n});
  const double* pa = a.data();
  const double* pb = b.data();
  double* pc = out.data();
  for (int i = 0; i < m; ++i) {
    const double* arow = pa + static_cast<std::size_t>(i) * k;
    double* crow = pc + static_cast<std::size_t>(i) * n;
    for (int l = 0; l < k; ++l) {
      const double av = arow[l];
      if (av == 0.0) continue;
      const double* brow = pb + static_cast<std::size_t>(l) * n;
      for (int j = 0; j < n; ++j) crow[j] += av * brow[j];
    }
  }
  return out;
}

Tensor transpose(const Tensor& a) {
  require_rank2("transpose", a);
  const int m = a.rows(), n = a.cols();
  Tensor out({n, m});
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < n; ++j) out(j, i) = a(i, j);
  return out;
}

Tensor affine(const Tensor& x, const Tensor& w, const Tensor& b) {
  require_rank2("affine", w);
  const int in = w.rows(), out_dim = w.cols();
  if (b.size() != out_dim) {
    throw_shape_error("affine", "bias " + b.shape_str() + " vs weights " + w.shape_str());
  }
  const bool vector_input = (x.rank() == 1);
  const int m = x.rows();
  if (x.cols() != in) {
    throw_shape_error("affine", "input " + x.shape_str() + " vs weights " + w.shape_str());
  }
  Tensor out = vector_input ? Tensor({out_dim}) : Tensor({m, out_dim});
  const double* px = x.data();
  const double* pw = w.data();
  double* po = out.data();
  for (int i = 0; i < m; ++i) {
    double* orow = po + static_cast<std::size_t>(i) * out_dim;
    for (int j = 0; j < out_dim; ++j) orow[j] = b[j];
    const double* xrow = px + static_cast<std::size_t>(i) * in;
    for (int l = 0; l < in; ++l) {
      const double xv = xrow[l];
      if (xv == 0.0) continue;
      const double* wrow = pw + static_cast<std::size_t>(l) * out_dim;
      for (int j = 0; j < out_dim; ++j) orow[j] += xv * wrow[j];
    }
  }
  return out;
}

Tensor add(const Tensor& a, const Tensor& b) { return zip("add", a, b, [](double x, double y) { return x + y; }); }
Tensor sub(const Tensor& a, const Tensor& b) { return zip("sub", a, b, [](double x, double y) { return x - y; }); }
Tensor mul(const Tensor& a, const Tensor& b) { return zip("mul", a, b, [](double x, double y) { return x * y; }); }
Tensor scale(const Tensor& a, double s) { return map(a, [s](double x) { return x * s; }); }
Tensor add_scalar(const Tensor& a, double s) { return map(a, [s](double x) { return x + s; }); }
Tensor neg(const Tensor& a) { return map(a, [](double x) { return -x; }); }

Tensor tanh(const Tensor& a) { return map(a, [](double x) { return std::tanh(x); }); }
Tensor relu(const Tensor& a) { return map(a, [](double x) { return x > 0.0 ? x : 0.0; }); }
Tensor sigmoid(const Tensor& a) {
  return map(a, [](double x) { return x >= 0.0 ? 1.0 / (1.0 + std::exp(-x)) : std::exp(x) / (1.0 + std::exp(x)); });
}
Tensor exp(const Tensor& a) { return map(a, [](double x) { return std::exp(x); }); }
Tensor log(const Tensor& a) { return map(a, [](double x) { return std::log(x); }); }

double stable_softplus(double x) {
  if (x > 30.0) return x;
  if (x < -30.0) return std::exp(x);
  return std::log1p(std::exp(x));
}

Tensor softplus(const Tensor& a) { return map(a, stable_softplus); }

Tensor clamp(const Tensor& a, double lo, double hi) {
  return map(a, [lo, hi](double x) { return std::min(hi, std::max(lo, x)); });
}

Tensor square(const Tensor& a) { return map(a, [](double x) { return x * x; }); }

Tensor softmax_rows(const Tensor& a) {
  const int m = a.rows(), n = a.cols();
  Tensor out(a.shape());
  for (int i = 0; i < m; ++i) {
    const double* row = a.data() + static_cast<std::size_t>(i) * n;
    double* orow = out.data() + static_cast<std::size_t>(i) * n;
    double mx = row[0];
    for (int j = 1; j < n; ++j) mx = std::max(mx, row[j]);
    double z = 0.0;
    for (int j = 0; j < n; ++j) {
      orow[j] = std::exp(row[j] - mx);
      z += orow[j];
    }
    for (int j = 0; j < n; ++j) orow[j] /= z;
  }
  return out;
}

Tensor log_softmax_rows(const Tensor& a) {
  const int m = a.rows(), n = a.cols();
  Tensor out(a.shape());
  for (int i = 0; i < m; ++i) {
    const double* row = a.data() + static_cast<std::size_t>(i) * n;
    double* orow = out.data() + static_cast<std::size_t>(i) * n;
    double mx = row[0];
    for (int j = 1; j < n; ++j) mx = std::max(mx, row[j]);
    double z = 0.0;
    for (int j = 0; j < n; ++j) z += std::exp(row[j] - mx);
    const double lse = mx + std::log(z);
    for (int j = 0; j < n; ++j) orow[j] = row[j] - lse;
  }
  return out;
}

Tensor logsumexp_rows(const Tensor& a) {
  require_rank2("logsumexp_rows", a);
  const int m = a.rows(), n = a.cols();
  Tensor out({m, 1});
  for (int i = 0; i < m; ++i) {
    const double* row = a.data() + static_cast<std::size_t>(i) * n;
    double mx = row[0];
    for (int j = 1; j < n; ++j) mx = std::max(mx, row[j]);
    double z = 0.0;
    for (int j = 0; j < n; ++j) z += std::exp(row[j] - mx);
    out(i, 0) = mx + std::log(z);
  }
  return out;
}

double sum(const Tensor& a) {
  double s = 0.0;
  for (std::int64_t i = 0; i < a.size(); ++i) s += a[i];
  return s;
}

double mean(const Tensor& a) {
  if (a.size() == 0) throw_shape_error("mean", "empty tensor");
  return sum(a) / static_cast<double>(a.size());
}

Tensor col_sums(const Tensor& a) {
  const int m = a.rows(), n = a.cols();
  Tensor out({n});
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < n; ++j) out[j] += a.data()[static_cast<std::size_t>(i) * n + j];
  return out;
}

Tensor row_sums(const Tensor& a) {
  require_rank2("row_sums", a);
  const int m = a.rows(), n = a.cols();
  Tensor out({m, 1});
  for (int i = 0; i < m; ++i) {
    double s = 0.0;
    for (int j = 0; j < n; ++j) s += a(i, j);
    out(i, 0) = s;
  }
  return out;
}

Tensor add_col(const Tensor& a, const Tensor& c) {
  require_rank2("add_col", a);
  if (c.size() != a.rows()) {
    throw_shape_error("add_col", "column " + c.shape_str() + " vs matrix " + a.shape_str());
  }
  Tensor out(a.shape());
  const int m = a.rows(), n = a.cols();
  for (int i = 0; i < m; ++i) {
    const double cv = c[i];
    for (int j = 0; j < n; ++j) out(i, j) = a(i, j) + cv;
  }
  return out;
}

Tensor add_row(const Tensor& a, const Tensor& r) {
  require_rank2("add_row", a);
  if (r.size() != a.cols()) {
    throw_shape_error("add_row", "row " + r.shape_str() + " vs matrix " + a.shape_str());
  }
  Tensor out(a.shape());
  const int m = a.rows(), n = a.cols();
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < n; ++j) out(i, j) = a(i, j) + r[j];
  return out;
}

Tensor concat_cols(const Tensor& a, const Tensor& b) {
  require_rank2("concat_cols", a);
  require_rank2("concat_cols", b);
  if (a.rows() != b.rows()) {
    throw_shape_error("concat_cols", "row counts " + a.shape_str() + " vs " + b.shape_str());
  }
  const int m = a.rows(), na = a.cols(), nb = b.cols();
  Tensor out({m, na + nb});
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < na; ++j) out(i, j) = a(i, j);
    for (int j = 0; j < nb; ++j) out(i, na + j) = b(i, j);
  }
  return out;
}

Tensor slice_cols(const Tensor& a, int c0, int c1) {
  require_rank2("slice_cols", a);
  if (c0 < 0 || c1 > a.cols() || c0 >= c1) {
    throw_shape_error("slice_cols", "range [" + std::to_string(c0) + "," + std::to_string(c1) + ") of " + a.shape_str());
  }
  const int m = a.rows(), n = c1 - c0;
  Tensor out({m, n});
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < n; ++j) out(i, j) = a(i, c0 + j);
  return out;
}

Tensor select_cols(const Tensor& a, const std::vector<int>& idx) {
  require_rank2("select_cols", a);
  if (static_cast<int>(idx.size()) != a.rows()) {
    throw_shape_error("select_cols", "index count " + std::to_string(idx.size()) + " vs " + a.shape_str());
  }
  Tensor out({a.rows(), 1});
  for (int i = 0; i < a.rows(); ++i) {
    const int j = idx[static_cast<std::size_t>(i)];
    if (j < 0 || j >= a.cols()) throw_shape_error("select_cols", "index " + std::to_string(j) + " out of " + a.shape_str());
    out(i, 0) = a(i, j);
  }
  return out;
}

}  // namespace lobirl::num

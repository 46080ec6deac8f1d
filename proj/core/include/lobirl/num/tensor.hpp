#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace lobirl::num {

/// Dense row-major tensor of 64-bit floats. Rank 1 and rank 2 cover every
/// model in this repo; the shape vector is kept general so reshapes stay
/// cheap to reason about.
class Tensor {
 public:
  Tensor() = default;
  explicit Tensor(std::vector<int> shape);
  Tensor(std::vector<int> shape, std::vector<double> data);

  static Tensor zeros(std::vector<int> shape) { return Tensor(std::move(shape)); }
  static Tensor full(std::vector<int> shape, double value);
  static Tensor from(std::vector<double> values);  // rank-1

  const std::vector<int>& shape() const { return shape_; }
  int rank() const { return static_cast<int>(shape_.size()); }
  std::int64_t size() const { return static_cast<std::int64_t>(data_.size()); }
  bool empty() const { return data_.empty(); }

  // 2-D accessors; a rank-1 tensor acts as a single row.
  int rows() const;
  int cols() const;

  double operator[](std::int64_t i) const { return data_[static_cast<std::size_t>(i)]; }
  double& operator[](std::int64_t i) { return data_[static_cast<std::size_t>(i)]; }
  double operator()(int r, int c) const { return data_[static_cast<std::size_t>(r) * cols() + c]; }
  double& operator()(int r, int c) { return data_[static_cast<std::size_t>(r) * cols() + c]; }

  const double* data() const { return data_.data(); }
  double* data() { return data_.data(); }
  const std::vector<double>& flat() const { return data_; }

  bool same_shape(const Tensor& other) const { return shape_ == other.shape_; }
  bool all_finite() const;
  void fill(double value);
  Tensor reshaped(std::vector<int> new_shape) const;

  std::string shape_str() const;

 private:
  std::vector<int> shape_;
  std::vector<double> data_;
};

// ---- shape plumbing -------------------------------------------------------

[[noreturn]] void throw_shape_error(const std::string& op, const std::string& detail);
void require_same_shape(const char* op, const Tensor& a, const Tensor& b);
void require_rank2(const char* op, const Tensor& a);

// ---- kernels ----------------------------------------------------------------
// Forward math shared by the tape ops and the inference paths, so there is a
// single definition of every operation.

Tensor matmul(const Tensor& a, const Tensor& b);
Tensor transpose(const Tensor& a);
// x*W + b with b broadcast across rows; x may be rank-1 (single sample).
Tensor affine(const Tensor& x, const Tensor& w, const Tensor& b);

Tensor add(const Tensor& a, const Tensor& b);
Tensor sub(const Tensor& a, const Tensor& b);
Tensor mul(const Tensor& a, const Tensor& b);
Tensor scale(const Tensor& a, double s);
Tensor add_scalar(const Tensor& a, double s);
Tensor neg(const Tensor& a);

Tensor tanh(const Tensor& a);
Tensor relu(const Tensor& a);
Tensor sigmoid(const Tensor& a);
Tensor exp(const Tensor& a);
Tensor log(const Tensor& a);
Tensor softplus(const Tensor& a);
Tensor clamp(const Tensor& a, double lo, double hi);
Tensor square(const Tensor& a);

Tensor softmax_rows(const Tensor& a);
Tensor log_softmax_rows(const Tensor& a);
Tensor logsumexp_rows(const Tensor& a);  // [m x n] -> [m x 1]

double sum(const Tensor& a);
double mean(const Tensor& a);
Tensor col_sums(const Tensor& a);  // [m x n] -> [n]
Tensor row_sums(const Tensor& a);  // [m x n] -> [m x 1]

// a + column vector c ([m] or [m x 1]) broadcast across columns.
Tensor add_col(const Tensor& a, const Tensor& c);
// a + row vector r ([n] or [1 x n]) broadcast across rows.
Tensor add_row(const Tensor& a, const Tensor& r);

Tensor concat_cols(const Tensor& a, const Tensor& b);
Tensor slice_cols(const Tensor& a, int c0, int c1);
// out[i, 0] = a(i, idx[i])
Tensor select_cols(const Tensor& a, const std::vector<int>& idx);

double stable_softplus(double x);

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kLogSqrt2Pi = 0.91893853320467274178;  // log(sqrt(2*pi))

}  // namespace lobirl::num

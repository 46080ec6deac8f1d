#include "lobirl/wm/mdn.hpp"

#include <cmath>
#include <stdexcept>

namespace lobirl::wm {

using num::Tape;
using num::Tensor;

namespace {

constexpr int kHeadOut = kLatentDim * kMixtureComponents * 3;  // 180
constexpr int kBlock = kLatentDim * kMixtureComponents;        // 60

Tensor one_hot_row(int action, int action_dim) {
  if (action < 0 || action >= action_dim) {
    throw std::invalid_argument("MdnRnn: action index " + std::to_string(action) + " out of range");
  }
  Tensor t({1, action_dim});
  t(0, action) = 1.0;
  return t;
}

}  // namespace

void MdnParams::validate() const {
  const std::vector<int> want = {kLatentDim, kMixtureComponents};
  if (weights.shape() != want || means.shape() != want || scales.shape() != want) {
    num::throw_shape_error("MdnParams", "expected [12x5] blocks, got " + weights.shape_str() + ", " + means.shape_str() +
                                            ", " + scales.shape_str());
  }
  for (int d = 0; d < kLatentDim; ++d) {
    double sum = 0.0;
    for (int k = 0; k < kMixtureComponents; ++k) {
      if (!(weights(d, k) >= 0.0)) throw std::invalid_argument("MdnParams: negative mixture weight");
      if (!(scales(d, k) > 0.0)) throw std::invalid_argument("MdnParams: non-positive scale");
      sum += weights(d, k);
    }
    if (std::fabs(sum - 1.0) > 1e-6) throw std::invalid_argument("MdnParams: weights do not sum to 1");
  }
}

MdnRnn::MdnRnn(int action_dim_, std::uint64_t seed) : action_dim(action_dim_) {
  num::Rng rng(seed);
  cell = num::RecurrentCell("mdn.cell", kLatentDim + action_dim, kRnnHidden, rng);
  head = num::DenseLayer("mdn.head", kRnnHidden, kHeadOut, num::Activation::identity, rng);
}

MdnParams mdn_params_from_head(const Tensor& head_out, int row) {
  if (head_out.cols() != kHeadOut) {
    num::throw_shape_error("mdn_params_from_head", "expected " + std::to_string(kHeadOut) + " columns, got " +
                                                       head_out.shape_str());
  }
  MdnParams p;
  p.weights = Tensor({kLatentDim, kMixtureComponents});
  p.means = Tensor({kLatentDim, kMixtureComponents});
  p.scales = Tensor({kLatentDim, kMixtureComponents});
  for (int d = 0; d < kLatentDim; ++d) {
    double mx = -1e300;
    for (int k = 0; k < kMixtureComponents; ++k) mx = std::max(mx, head_out(row, d * kMixtureComponents + k));
    double z = 0.0;
    for (int k = 0; k < kMixtureComponents; ++k) {
      const double e = std::exp(head_out(row, d * kMixtureComponents + k) - mx);
      p.weights(d, k) = e;
      z += e;
    }
    for (int k = 0; k < kMixtureComponents; ++k) {
      p.weights(d, k) /= z;
      p.means(d, k) = head_out(row, kBlock + d * kMixtureComponents + k);
      const double s = std::clamp(head_out(row, 2 * kBlock + d * kMixtureComponents + k), kLogScaleMin, kLogScaleMax);
      p.scales(d, k) = std::exp(s);
    }
  }
  return p;
}

std::pair<MdnParams, Tensor> MdnRnn::forward(const Tensor& z, int action, const Tensor& h) const {
  Tensor zrow = z.rank() == 1 ? z.reshaped({1, kLatentDim}) : z;
  if (zrow.cols() != kLatentDim || zrow.rows() != 1) {
    num::throw_shape_error("MdnRnn::forward", "latent must be [1x12], got " + z.shape_str());
  }
  const Tensor input = num::concat_cols(zrow, one_hot_row(action, action_dim));
  Tensor next_h = cell.step(input, h);
  const Tensor head_out = head.forward(next_h);
  return {mdn_params_from_head(head_out, 0), std::move(next_h)};
}

std::vector<num::Parameter*> MdnRnn::parameters() {
  std::vector<num::Parameter*> out = cell.parameters();
  out.push_back(&head.weights);
  out.push_back(&head.bias);
  return out;
}

double mdn_nll(const MdnParams& params, const Tensor& z_next) {
  if (z_next.size() != kLatentDim) {
    num::throw_shape_error("mdn_nll", "expected 12 latent dims, got " + z_next.shape_str());
  }
  double nll = 0.0;
  for (int d = 0; d < kLatentDim; ++d) {
    double mx = -1e300;
    double terms[kMixtureComponents];
    for (int k = 0; k < kMixtureComponents; ++k) {
      const double sigma = params.scales(d, k);
      const double t = (z_next[d] - params.means(d, k)) / sigma;
      terms[k] = std::log(params.weights(d, k) + 1e-300) - 0.5 * t * t - std::log(sigma) - num::kLogSqrt2Pi;
      mx = std::max(mx, terms[k]);
    }
    double z = 0.0;
    for (int k = 0; k < kMixtureComponents; ++k) z += std::exp(terms[k] - mx);
    nll -= mx + std::log(z);
  }
  return nll;
}

Tensor mdn_sample(const MdnParams& params, double temperature, num::Rng& rng) {
  if (temperature < 0.0) throw std::invalid_argument("mdn_sample: temperature must be >= 0");
  Tensor z({1, kLatentDim});
  for (int d = 0; d < kLatentDim; ++d) {
    double row[kMixtureComponents];
    for (int k = 0; k < kMixtureComponents; ++k) row[k] = params.weights(d, k);
    const int k = rng.categorical(row, kMixtureComponents);
    z(0, d) = params.means(d, k) + params.scales(d, k) * temperature * rng.normal();
  }
  return z;
}

Tape::Id mdn_nll_graph(Tape& t, Tape::Id head_out, const Tensor& z_next) {
  const Tensor& head = t.value(head_out);
  if (head.cols() != kHeadOut) {
    num::throw_shape_error("mdn_nll_graph", "expected head [Bx180], got " + head.shape_str());
  }
  const int batch = head.rows();
  if (z_next.rows() != batch || z_next.cols() != kLatentDim) {
    num::throw_shape_error("mdn_nll_graph", "targets " + z_next.shape_str() + " vs head " + head.shape_str());
  }
  const int rows = batch * kLatentDim;

  const Tape::Id logits = t.reshape(t.slice_cols(head_out, 0, kBlock), {rows, kMixtureComponents});
  const Tape::Id means = t.reshape(t.slice_cols(head_out, kBlock, 2 * kBlock), {rows, kMixtureComponents});
  const Tape::Id log_scale =
      t.reshape(t.clamp(t.slice_cols(head_out, 2 * kBlock, 3 * kBlock), kLogScaleMin, kLogScaleMax),
                {rows, kMixtureComponents});

  const Tape::Id log_w = t.log_softmax_rows(logits);
  const Tape::Id target_col = t.constant(z_next.reshaped({rows, 1}));
  const Tape::Id diff = t.add_col(t.neg(means), target_col);              // z - mu
  const Tape::Id scaled = t.mul(diff, t.exp(t.neg(log_scale)));           // (z - mu) / sigma
  const Tape::Id log_norm =
      t.add_scalar(t.sub(t.scale(t.square(scaled), -0.5), log_scale), -num::kLogSqrt2Pi);
  const Tape::Id joint = t.add(log_w, log_norm);
  const Tape::Id lse = t.logsumexp_rows(joint);  // [rows x 1]
  // Sum over latent dims, mean over the batch.
  return t.scale(t.sum_all(lse), -1.0 / batch);
}

}  // namespace lobirl::wm

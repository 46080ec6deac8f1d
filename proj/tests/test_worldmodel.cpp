#include <doctest.h>

#include <cmath>
#include <cstring>

#include "lobirl/lob/synth.hpp"
#include "lobirl/num/adam.hpp"
#include "lobirl/num/snapshot.hpp"
#include "lobirl/wm/autoencoder.hpp"
#include "lobirl/wm/mdn.hpp"
#include "lobirl/wm/reward.hpp"
#include "lobirl/wm/train.hpp"
#include "support/gradcheck.hpp"
#include "support/tempdir.hpp"

using namespace lobirl;
using num::Tensor;
using wm::kLatentDim;
using wm::kMixtureComponents;
using wm::MdnParams;
using wm::MdnRnn;

namespace {

MdnParams single_component_params(double mean, double sigma) {
  MdnParams p;
  p.weights = Tensor({kLatentDim, kMixtureComponents});
  p.means = Tensor::full({kLatentDim, kMixtureComponents}, mean);
  p.scales = Tensor::full({kLatentDim, kMixtureComponents}, sigma);
  for (int d = 0; d < kLatentDim; ++d) p.weights(d, 0) = 1.0;
  return p;
}

MdnParams random_params(num::Rng& rng) {
  MdnParams p;
  p.weights = Tensor({kLatentDim, kMixtureComponents});
  p.means = Tensor({kLatentDim, kMixtureComponents});
  p.scales = Tensor({kLatentDim, kMixtureComponents});
  for (int d = 0; d < kLatentDim; ++d) {
    double z = 0.0;
    for (int k = 0; k < kMixtureComponents; ++k) {
      p.weights(d, k) = std::exp(rng.uniform(-2.0, 2.0));
      z += p.weights(d, k);
      p.means(d, k) = rng.uniform(-3.0, 3.0);
      p.scales(d, k) = std::exp(rng.uniform(-2.0, 1.0));
    }
    for (int k = 0; k < kMixtureComponents; ++k) p.weights(d, k) /= z;
  }
  return p;
}

std::vector<lob::LobWindow> synthetic_windows(int n_ticks, std::uint64_t seed) {
  return lob::make_windows(lob::generate_synthetic(lob::train_regime_preset(), n_ticks, seed));
}

}  // namespace

TEST_CASE("encode emits 12 latent dims deterministically") {
  wm::Autoencoder ae(7);
  const auto windows = synthetic_windows(40, 3);
  const Tensor z1 = ae.encode_window(windows[0]);
  const Tensor z2 = ae.encode_window(windows[0]);
  CHECK(z1.cols() == kLatentDim);
  CHECK(z1.rows() == 1);
  CHECK(std::memcmp(z1.data(), z2.data(), sizeof(double) * kLatentDim) == 0);
  Tensor bad({1, lob::kWindowFeatures});
  bad(0, 5) = std::nan("");
  CHECK_THROWS_AS(ae.encode(bad), std::invalid_argument);
}

TEST_CASE("autoencoder memorizes a single repeated window") {
  const auto windows = synthetic_windows(30, 5);
  std::vector<lob::LobWindow> repeated(1200, windows[0]);
  wm::Autoencoder ae(11);
  wm::AutoencoderConfig cfg;
  cfg.epochs = 60;
  cfg.batch_size = 64;
  cfg.lr = 3e-3;
  cfg.seed = 12;
  const auto report = wm::train_autoencoder(ae, repeated, cfg);
  INFO("holdout mse ", report.holdout_mse);
  CHECK(report.holdout_mse < 1e-3);
}

TEST_CASE("autoencoder training loss does not increase across epochs beyond tolerance") {
  const auto windows = synthetic_windows(3000, 8);
  wm::Autoencoder ae(21);
  wm::AutoencoderConfig cfg;
  cfg.epochs = 8;
  cfg.seed = 22;
  const auto report = wm::train_autoencoder(ae, windows, cfg);
  REQUIRE(report.epoch_mse.size() == 8);
  for (std::size_t e = 1; e < report.epoch_mse.size(); ++e) {
    CHECK(report.epoch_mse[e] <= report.epoch_mse[e - 1] * 1.05);
  }
  CHECK(report.epoch_mse.back() <= report.epoch_mse.front());
}

TEST_CASE("autoencoder snapshot round-trips to identical encodings") {
  testsupport::TempDir tmp("ae_snap");
  const auto windows = synthetic_windows(50, 13);
  wm::Autoencoder ae(31);
  num::save_snapshot(tmp.file("ae.json"), {"autoencoder", 31, 0}, ae.parameters());

  wm::Autoencoder restored(99);  // different init, overwritten by the load
  const auto meta = num::load_snapshot(tmp.file("ae.json"), restored.parameters());
  CHECK(meta.model_kind == "autoencoder");
  const Tensor a = ae.encode_window(windows[0]);
  const Tensor b = restored.encode_window(windows[0]);
  CHECK(std::memcmp(a.data(), b.data(), sizeof(double) * kLatentDim) == 0);
}

TEST_CASE("mdn forward emits normalized weights, positive scales, and is pure") {
  MdnRnn mdn(3, 17);
  num::Rng rng(4);
  Tensor z({1, kLatentDim});
  for (int j = 0; j < kLatentDim; ++j) z(0, j) = rng.normal();
  const Tensor h = mdn.initial_hidden();
  auto [p1, h1] = mdn.forward(z, 2, h);
  auto [p2, h2] = mdn.forward(z, 2, h);
  p1.validate();
  for (int d = 0; d < kLatentDim; ++d) {
    double sum = 0.0;
    for (int k = 0; k < kMixtureComponents; ++k) {
      sum += p1.weights(d, k);
      CHECK(p1.scales(d, k) > 0.0);
    }
    CHECK(std::fabs(sum - 1.0) <= 1e-6);
  }
  CHECK(std::memcmp(h1.data(), h2.data(), sizeof(double) * wm::kRnnHidden) == 0);
  CHECK(std::memcmp(p1.means.data(), p2.means.data(), sizeof(double) * kLatentDim * kMixtureComponents) == 0);
}

TEST_CASE("single-component NLL at the mean equals log(sigma sqrt(2 pi)) per dimension") {
  const double sigma = 0.37;
  const MdnParams p = single_component_params(0.9, sigma);
  const Tensor z = Tensor::full({kLatentDim}, 0.9);
  const double expect_per_dim = std::log(sigma * std::sqrt(2.0 * num::kPi));
  CHECK(wm::mdn_nll(p, z) == doctest::Approx(kLatentDim * expect_per_dim).epsilon(1e-9));
}

TEST_CASE("NLL decreases as the target approaches the dominant mean") {
  const MdnParams p = single_component_params(1.0, 0.5);
  double prev = wm::mdn_nll(p, Tensor::full({kLatentDim}, 3.0));
  for (double v : {2.5, 2.0, 1.5, 1.2, 1.0}) {
    const double cur = wm::mdn_nll(p, Tensor::full({kLatentDim}, v));
    CHECK(cur < prev);
    prev = cur;
  }
}

TEST_CASE("mdn_nll matches brute-force density evaluation within 1e-8") {
  num::Rng rng(23);
  for (int trial = 0; trial < 40; ++trial) {
    const MdnParams p = random_params(rng);
    Tensor z({kLatentDim});
    for (int d = 0; d < kLatentDim; ++d) z[d] = rng.uniform(-4.0, 4.0);
    // Direct mixture density, no log-sum-exp trick.
    long double nll = 0.0;
    for (int d = 0; d < kLatentDim; ++d) {
      long double density = 0.0;
      for (int k = 0; k < kMixtureComponents; ++k) {
        const long double s = p.scales(d, k);
        const long double t = (z[d] - p.means(d, k)) / s;
        density += static_cast<long double>(p.weights(d, k)) *
                   std::exp(-0.5L * t * t) / (s * std::sqrt(2.0L * static_cast<long double>(num::kPi)));
      }
      nll -= std::log(density);
    }
    CHECK(std::fabs(wm::mdn_nll(p, z) - static_cast<double>(nll)) < 1e-8);
  }
}

TEST_CASE("zero-temperature single-component sample returns the mean exactly") {
  const MdnParams p = single_component_params(-0.75, 1.3);
  num::Rng rng(5);
  const Tensor z = wm::mdn_sample(p, 0.0, rng);
  for (int d = 0; d < kLatentDim; ++d) CHECK(z(0, d) == -0.75);
}

TEST_CASE("sample mean over 1e5 draws matches the closed-form mixture mean") {
  num::Rng prng(31);
  const MdnParams p = random_params(prng);
  num::Rng rng(32);
  const int n = 100000;
  std::vector<double> sums(kLatentDim, 0.0);
  for (int i = 0; i < n; ++i) {
    const Tensor z = wm::mdn_sample(p, 1.0, rng);
    for (int d = 0; d < kLatentDim; ++d) sums[static_cast<std::size_t>(d)] += z(0, d);
  }
  for (int d = 0; d < kLatentDim; ++d) {
    double mean_expect = 0.0, second = 0.0;
    for (int k = 0; k < kMixtureComponents; ++k) {
      mean_expect += p.weights(d, k) * p.means(d, k);
      second += p.weights(d, k) * (p.scales(d, k) * p.scales(d, k) + p.means(d, k) * p.means(d, k));
    }
    const double se = std::sqrt((second - mean_expect * mean_expect) / n);
    CHECK(std::fabs(sums[static_cast<std::size_t>(d)] / n - mean_expect) < 3.0 * se + 1e-12);
  }
}

TEST_CASE("temperature scales the sampled std by its value within 5 percent") {
  const MdnParams p = single_component_params(0.0, 0.8);
  const int n = 100000;
  auto sample_std = [&](double tau, std::uint64_t seed) {
    num::Rng rng(seed);
    double sum = 0.0, sumsq = 0.0;
    for (int i = 0; i < n; ++i) {
      const double v = wm::mdn_sample(p, tau, rng)(0, 0);
      sum += v;
      sumsq += v * v;
    }
    const double mean = sum / n;
    return std::sqrt(sumsq / n - mean * mean);
  };
  const double ratio = sample_std(2.0, 41) / sample_std(1.0, 42);
  CHECK(ratio > 1.9);
  CHECK(ratio < 2.1);
}

TEST_CASE("seeded sampling is reproducible") {
  num::Rng prng(51);
  const MdnParams p = random_params(prng);
  num::Rng r1(7), r2(7);
  const Tensor a = wm::mdn_sample(p, 1.0, r1);
  const Tensor b = wm::mdn_sample(p, 1.0, r2);
  CHECK(std::memcmp(a.data(), b.data(), sizeof(double) * kLatentDim) == 0);
}

namespace {

/// AR(1) latent sequence with per-dimension structure the MDN can learn.
Tensor ar_latents(int n, std::uint64_t seed) {
  num::Rng rng(seed);
  Tensor latents({n, kLatentDim});
  std::vector<double> state(kLatentDim, 0.0);
  for (int t = 0; t < n; ++t) {
    for (int d = 0; d < kLatentDim; ++d) {
      state[static_cast<std::size_t>(d)] = 0.85 * state[static_cast<std::size_t>(d)] + 0.15 * rng.normal();
      latents(t, d) = state[static_cast<std::size_t>(d)];
    }
  }
  return latents;
}

}  // namespace

TEST_CASE("trained MDN-RNN beats its initialization on held-out NLL") {
  const Tensor latents = ar_latents(3000, 61);
  std::vector<int> actions(3000, 0);
  num::Rng arng(62);
  for (int& a : actions) a = arng.uniform_int(0, 2);

  MdnRnn mdn(3, 63);
  wm::MdnTrainConfig cfg;
  cfg.epochs = 3;
  cfg.unroll = 16;
  cfg.batch_size = 16;
  cfg.seed = 64;
  const auto report = wm::train_mdnrnn(mdn, latents, actions, cfg);
  INFO("initial ", report.holdout_nll_initial, " trained ", report.holdout_nll_trained);
  CHECK(report.holdout_nll_trained < report.holdout_nll_initial);
  REQUIRE(report.epoch_nll.size() == 3);
  CHECK(report.epoch_nll.back() < report.epoch_nll.front());
}

TEST_CASE("MDN head and cell gradients match finite differences on an unrolled NLL") {
  const Tensor latents = ar_latents(20, 71);
  std::vector<int> actions(20, 1);
  MdnRnn mdn(3, 72);
  auto params = mdn.parameters();

  const int unroll = 4;
  auto build_loss = [&](num::Tape& t) {
    num::Tape::Id h = t.constant(Tensor({1, wm::kRnnHidden}));
    num::Tape::Id total = t.constant(Tensor({1}));
    for (int j = 0; j < unroll; ++j) {
      Tensor x({1, kLatentDim + 3});
      Tensor target({1, kLatentDim});
      for (int c = 0; c < kLatentDim; ++c) {
        x(0, c) = latents(j, c);
        target(0, c) = latents(j + 1, c);
      }
      x(0, kLatentDim + actions[static_cast<std::size_t>(j)]) = 1.0;
      h = mdn.cell.step(t, t.constant(x), h);
      total = t.add(total, wm::mdn_nll_graph(t, mdn.head.forward(t, h), target));
    }
    return total;
  };

  auto loss_value = [&] {
    num::Tape t;
    return t.value(build_loss(t))[0];
  };

  for (num::Parameter* p : params) p->zero_grad();
  num::Tape t;
  t.backward(build_loss(t));

  const auto report = testsupport::finite_diff_check_sampled(params, loss_value, 400, 73);
  INFO(report.worst);
  CHECK(report.max_rel_err < 1e-3);
}

TEST_CASE("deterministic transitions shrink the predicted scales") {
  // Smooth noiseless dynamics: sinusoid per dimension.
  const int n = 1500;
  Tensor latents({n, kLatentDim});
  for (int t = 0; t < n; ++t)
    for (int d = 0; d < kLatentDim; ++d) latents(t, d) = std::sin(0.11 * t + 0.5 * d);
  std::vector<int> actions(static_cast<std::size_t>(n), 0);

  MdnRnn mdn(3, 81);
  const double sigma_init = wm::median_predicted_scale(mdn, latents, actions, 0, 200);
  wm::MdnTrainConfig cfg;
  cfg.epochs = 6;
  cfg.unroll = 16;
  cfg.batch_size = 16;
  cfg.seed = 82;
  wm::train_mdnrnn(mdn, latents, actions, cfg);
  const double sigma_trained = wm::median_predicted_scale(mdn, latents, actions, 0, 200);
  INFO("init ", sigma_init, " trained ", sigma_trained);
  CHECK(sigma_trained < 0.25 * sigma_init);
}

TEST_CASE("reward model fits a constant dataset to within 1e-3") {
  const int n = 2000;
  num::Rng rng(91);
  wm::RewardDataset data;
  data.features = Tensor({n, kLatentDim + 3});
  data.targets = Tensor::full({n, 1}, 0.42);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < kLatentDim; ++j) data.features(i, j) = rng.normal();
    data.features(i, kLatentDim + rng.uniform_int(0, 2)) = 1.0;
  }
  wm::RewardModel model(3, 92);
  wm::RewardTrainConfig cfg;
  cfg.epochs = 60;
  cfg.lr = 3e-3;
  cfg.lr_decay = 0.95;
  cfg.seed = 93;
  wm::train_reward_model(model, data, cfg);
  Tensor z({kLatentDim});
  for (int j = 0; j < kLatentDim; ++j) z[j] = rng.normal();
  CHECK(std::fabs(model.predict(z, 1) - 0.42) < 1e-3);
}

TEST_CASE("reward model beats the mean predictor on held-out data") {
  const int n = 6000;
  num::Rng rng(101);
  wm::RewardDataset data;
  data.features = Tensor({n, kLatentDim + 3});
  data.targets = Tensor({n, 1});
  for (int i = 0; i < n; ++i) {
    double signal = 0.0;
    for (int j = 0; j < kLatentDim; ++j) {
      data.features(i, j) = rng.normal();
      signal += (j % 2 == 0 ? 1.0 : -0.5) * data.features(i, j);
    }
    const int a = rng.uniform_int(0, 2);
    data.features(i, kLatentDim + a) = 1.0;
    data.targets(i, 0) = 0.3 * signal * (a - 1) + 0.05 * rng.normal();
  }
  wm::RewardModel model(3, 102);
  wm::RewardTrainConfig cfg;
  cfg.epochs = 15;
  cfg.seed = 103;
  const auto report = wm::train_reward_model(model, data, cfg);
  INFO("holdout mse ", report.holdout_mse, " variance ", report.holdout_target_variance);
  CHECK(report.holdout_mse < report.holdout_target_variance);
}

TEST_CASE("reward model snapshot round-trips to identical predictions") {
  testsupport::TempDir tmp("rm_snap");
  wm::RewardModel model(3, 111);
  num::save_snapshot(tmp.file("rm.json"), {"reward", 111, 0}, model.parameters());
  wm::RewardModel restored(3, 999);
  num::load_snapshot(tmp.file("rm.json"), restored.parameters());
  num::Rng rng(112);
  for (int trial = 0; trial < 10; ++trial) {
    Tensor z({kLatentDim});
    for (int j = 0; j < kLatentDim; ++j) z[j] = rng.normal();
    const int a = rng.uniform_int(0, 2);
    const double r1 = model.predict(z, a);
    const double r2 = restored.predict(z, a);
    CHECK(std::memcmp(&r1, &r2, sizeof(double)) == 0);
  }
}

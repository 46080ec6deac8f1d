#include <doctest.h>

#include <cmath>

#include "lobirl/num/adam.hpp"
#include "lobirl/num/layers.hpp"
#include "lobirl/num/rng.hpp"

using namespace lobirl;
using num::Adam;
using num::AdamConfig;
using num::Parameter;
using num::Tensor;

TEST_CASE("zero gradients leave parameters unchanged") {
  Parameter p("p", Tensor({2, 2}, {1.0, -2.0, 3.0, 4.0}));
  const Tensor before = p.value;
  Adam opt({&p});
  opt.step();
  for (std::int64_t i = 0; i < p.size(); ++i) CHECK(p.value[i] == before[i]);
}

TEST_CASE("first step with constant gradient moves by about lr in the gradient direction") {
  AdamConfig cfg;
  cfg.lr = 0.05;
  Parameter p("p", Tensor::from({1.0, 1.0}));
  p.grad[0] = 0.3;    // positive gradient -> parameter decreases
  p.grad[1] = -42.0;  // negative gradient -> parameter increases
  Adam opt({&p}, cfg);
  opt.step();
  // Bias-corrected m_hat / (sqrt(v_hat) + eps) == sign(g) on the first step.
  CHECK(p.value[0] == doctest::Approx(1.0 - cfg.lr).epsilon(1e-6));
  CHECK(p.value[1] == doctest::Approx(1.0 + cfg.lr).epsilon(1e-6));
}

TEST_CASE("quadratic bowl converges within 2000 steps") {
  // loss = 0.5 * sum((x - target)^2), minimum at target.
  const Tensor target = Tensor::from({1.5, -2.25, 0.75});
  Parameter x("x", Tensor::from({8.0, 5.0, -6.0}));
  AdamConfig cfg;
  cfg.lr = 0.02;
  Adam opt({&x}, cfg);
  for (int step = 0; step < 2000; ++step) {
    opt.zero_grad();
    for (std::int64_t i = 0; i < x.size(); ++i) x.grad[i] = x.value[i] - target[i];
    opt.step();
  }
  for (std::int64_t i = 0; i < x.size(); ++i) CHECK(std::fabs(x.value[i] - target[i]) < 1e-3);
  CHECK(opt.steps() == 2000);
}

TEST_CASE("NaN gradient raises an error naming the parameter") {
  Parameter good("good", Tensor::from({1.0}));
  Parameter bad("bad_param", Tensor::from({1.0}));
  bad.grad[0] = std::nan("");
  Adam opt({&good, &bad});
  CHECK_THROWS_WITH_AS(opt.step(), "Adam::step: non-finite gradient in parameter 'bad_param'", std::runtime_error);
}

TEST_CASE("gradient clipping caps the global norm") {
  Parameter a("a", Tensor::from({0.0, 0.0}));
  Parameter b("b", Tensor::from({0.0}));
  a.grad[0] = 3.0;
  a.grad[1] = 0.0;
  b.grad[0] = 4.0;
  const std::vector<Parameter*> params = {&a, &b};
  CHECK(num::global_grad_norm(params) == doctest::Approx(5.0));
  num::clip_global_norm(params, 2.5);
  CHECK(num::global_grad_norm(params) == doctest::Approx(2.5));
  // Direction preserved.
  CHECK(a.grad[0] == doctest::Approx(1.5));
  CHECK(b.grad[0] == doctest::Approx(2.0));
  // Below the cap nothing changes.
  num::clip_global_norm(params, 10.0);
  CHECK(num::global_grad_norm(params) == doctest::Approx(2.5));
}

#include <doctest.h>

#include <cmath>
#include <fstream>

#include "lobirl/lob/csv.hpp"
#include "lobirl/lob/stats.hpp"
#include "lobirl/lob/synth.hpp"
#include "lobirl/lob/window.hpp"
#include "lobirl/num/rng.hpp"
#include "support/tempdir.hpp"

using namespace lobirl;
using lob::LobTick;
using lob::RegimeParams;

namespace {

std::vector<double> increments(const std::vector<double>& mids) {
  std::vector<double> out;
  for (std::size_t i = 1; i < mids.size(); ++i) out.push_back(mids[i] - mids[i - 1]);
  return out;
}

}  // namespace

TEST_CASE("csv round trip reproduces every tick exactly") {
  testsupport::TempDir tmp("csv");
  const auto ticks = lob::generate_synthetic(lob::train_regime_preset(), 500, 7);
  lob::write_csv(tmp.file("ticks.csv"), ticks);
  const auto parsed = lob::parse_csv(tmp.file("ticks.csv"));
  CHECK(parsed.warnings.empty());
  REQUIRE(parsed.ticks.size() == ticks.size());
  for (std::size_t i = 0; i < ticks.size(); ++i) CHECK(parsed.ticks[i] == ticks[i]);
}

TEST_CASE("crossed book rows are rejected with a line diagnostic") {
  testsupport::TempDir tmp("crossed");
  std::ofstream out(tmp.file("bad.csv"));
  out << lob::kCsvHeader << "\n";
  // bid 100 >= ask 99: crossed.
  out << "1,100,99.9,99.8,10,10,10,99,99.1,99.2,10,10,10,99.5,5\n";
  out << "2,100,99.9,99.8,10,10,10,100.1,100.2,100.3,10,10,10,100.1,5\n";
  out.close();
  const auto parsed = lob::parse_csv(tmp.file("bad.csv"));
  REQUIRE(parsed.ticks.size() == 1);
  CHECK(parsed.ticks[0].timestamp_ms == 2);
  REQUIRE(parsed.warnings.size() == 1);
  CHECK(parsed.warnings[0].find("line 2") != std::string::npos);
  CHECK(parsed.warnings[0].find("crossed") != std::string::npos);
}

TEST_CASE("empty file parses to an empty sequence with a warning") {
  testsupport::TempDir tmp("empty");
  std::ofstream(tmp.file("empty.csv")).close();
  const auto parsed = lob::parse_csv(tmp.file("empty.csv"));
  CHECK(parsed.ticks.empty());
  REQUIRE(parsed.warnings.size() == 1);
  CHECK(parsed.warnings[0].find("empty") != std::string::npos);
}

TEST_CASE("non-monotonic timestamps are a hard error") {
  testsupport::TempDir tmp("ts");
  std::ofstream out(tmp.file("ts.csv"));
  out << lob::kCsvHeader << "\n";
  out << "5,100,99.9,99.8,10,10,10,100.1,100.2,100.3,10,10,10,100.1,5\n";
  out << "5,100,99.9,99.8,10,10,10,100.1,100.2,100.3,10,10,10,100.1,5\n";
  out.close();
  CHECK_THROWS_AS(lob::parse_csv(tmp.file("ts.csv")), std::runtime_error);
}

TEST_CASE("generator is deterministic per seed") {
  const RegimeParams p = lob::train_regime_preset();
  const auto a = lob::generate_synthetic(p, 2000, 42);
  const auto b = lob::generate_synthetic(p, 2000, 42);
  const auto c = lob::generate_synthetic(p, 2000, 43);
  CHECK(a == b);
  CHECK(a != c);
}

TEST_CASE("doubling volatility doubles the std of mid increments within 15 percent") {
  RegimeParams lo = lob::train_regime_preset();
  RegimeParams hi = lo;
  hi.volatility = 2.0 * lo.volatility;
  const int n = 100000;
  const auto mids_lo = lob::mid_series(lob::generate_synthetic(lo, n, 11));
  const auto mids_hi = lob::mid_series(lob::generate_synthetic(hi, n, 11));
  const double s_lo = lob::population_std(increments(mids_lo));
  const double s_hi = lob::population_std(increments(mids_hi));
  const double ratio = s_hi / s_lo;
  INFO("ratio ", ratio);
  CHECK(ratio > 1.7);
  CHECK(ratio < 2.3);
}

TEST_CASE("generated ticks always satisfy the LobTick invariants") {
  num::Rng rng(202);
  for (int trial = 0; trial < 25; ++trial) {
    RegimeParams p;
    p.mean_reversion = rng.uniform(0.0, 0.05);
    p.volatility = rng.uniform(0.005, 0.5);
    p.base_spread = rng.uniform(0.01, 0.2);
    p.tick_size = 0.01;
    p.mean_order_size = rng.uniform(1.0, 500.0);
    p.anchor_price = rng.uniform(5.0, 500.0);
    p.imbalance_strength = rng.uniform(0.0, 0.2);
    p.imbalance_persistence = rng.uniform(0.0, 0.999);
    const auto ticks = lob::generate_synthetic(p, 400, rng.bits());
    for (const LobTick& t : ticks) {
      const std::string why = lob::validate_tick(t);
      INFO("trial ", trial, ": ", why);
      CHECK(why.empty());
    }
  }
}

TEST_CASE("window counts and flatten length") {
  const auto ticks = lob::generate_synthetic(lob::train_regime_preset(), 1000, 3);
  CHECK(lob::make_windows({ticks.begin(), ticks.begin() + 10}).size() == 1);
  CHECK_THROWS_AS(lob::make_windows({ticks.begin(), ticks.begin() + 9}), std::invalid_argument);
  const auto windows = lob::make_windows(ticks);
  CHECK(windows.size() == 991);
  CHECK(lob::kWindowFeatures == 120);
  for (const auto& w : windows) {
    CHECK(w.features.size() == 120);
  }
}

TEST_CASE("window features are finite and price-scale free") {
  RegimeParams p = lob::train_regime_preset();
  p.anchor_price = 25000.0;
  p.base_spread = 2.0;
  p.tick_size = 0.5;
  p.volatility = 5.0;
  const auto windows = lob::make_windows(lob::generate_synthetic(p, 300, 9));
  for (const auto& w : windows) {
    for (double f : w.features) {
      CHECK(std::isfinite(f));
      CHECK(std::fabs(f) < 50.0);
    }
  }
}

TEST_CASE("mid price arithmetic") {
  LobTick t;
  t.bids = {{{100.0, 10.0}, {99.9, 10.0}, {99.8, 10.0}}};
  t.asks = {{{102.0, 10.0}, {102.1, 10.0}, {102.2, 10.0}}};
  CHECK(lob::mid_price(t) == doctest::Approx(101.0));
  t.asks[0].price = 100.01;  // one tick above the bid
  CHECK(lob::mid_price(t) == doctest::Approx(100.005));
}

TEST_CASE("mid series matches brute-force recomputation over a generated day") {
  const auto ticks = lob::generate_synthetic(lob::train_regime_preset(), 5000, 31);
  const auto mids = lob::mid_series(ticks);
  REQUIRE(mids.size() == ticks.size());
  for (std::size_t i = 0; i < ticks.size(); ++i) {
    const double expect = (ticks[i].bids[0].price + ticks[i].asks[0].price) / 2.0;
    CHECK(mids[i] == doctest::Approx(expect).epsilon(1e-12));
  }
}

TEST_CASE("rolling volatility of a constant series is zero") {
  const std::vector<double> mids(50, 42.0);
  const auto stats = lob::rolling_volatility(mids, 10);
  CHECK(stats.volatility.size() == 41);
  for (double v : stats.volatility) CHECK(v == 0.0);
}

TEST_CASE("alternating 1,e,1,e series has rolling std exactly one") {
  // log-returns alternate +1, -1; any window with an even count of returns is
  // balanced with population std 1. window_len = 3 mids -> 2 returns.
  std::vector<double> mids;
  for (int i = 0; i < 20; ++i) mids.push_back(i % 2 == 0 ? 1.0 : std::exp(1.0));
  const auto stats = lob::rolling_volatility(mids, 3);
  REQUIRE(stats.volatility.size() == 18);
  for (double v : stats.volatility) CHECK(v == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("rolling volatility matches a naive oracle within 1e-10") {
  num::Rng rng(77);
  std::vector<double> mids;
  double m = 100.0;
  for (int i = 0; i < 3000; ++i) {
    m *= std::exp(0.001 * rng.normal());
    mids.push_back(m);
  }
  const int w = 25;
  const auto stats = lob::rolling_volatility(mids, w);

  // Naive O(n*w) recomputation, no rolling sums.
  std::vector<double> returns;
  for (std::size_t i = 1; i < mids.size(); ++i) returns.push_back(std::log(mids[i] / mids[i - 1]));
  REQUIRE(stats.volatility.size() == mids.size() - w + 1);
  for (std::size_t start = 0; start + w <= mids.size(); ++start) {
    double mean = 0.0;
    for (int j = 0; j < w - 1; ++j) mean += returns[start + static_cast<std::size_t>(j)];
    mean /= (w - 1);
    double var = 0.0;
    for (int j = 0; j < w - 1; ++j) {
      const double d = returns[start + static_cast<std::size_t>(j)] - mean;
      var += d * d;
    }
    const double expect = std::sqrt(var / (w - 1));
    CHECK(std::fabs(stats.volatility[start] - expect) < 1e-10);
  }
}

TEST_CASE("insufficient data for rolling volatility is an error") {
  const std::vector<double> mids(5, 1.0);
  CHECK_THROWS_AS(lob::rolling_volatility(mids, 6), std::invalid_argument);
  CHECK_THROWS_AS(lob::rolling_volatility(mids, 1), std::invalid_argument);
}

TEST_CASE("train and test presets produce separable volatility distributions") {
  const int n = 100000;
  const auto train_mids = lob::mid_series(lob::generate_synthetic(lob::train_regime_preset(), n, 5));
  const auto test_mids = lob::mid_series(lob::generate_synthetic(lob::test_regime_preset(), n, 6));
  const auto vol_train = lob::rolling_volatility(train_mids, 500).volatility;
  const auto vol_test = lob::rolling_volatility(test_mids, 500).volatility;
  const double m1 = lob::mean_of(vol_train), m2 = lob::mean_of(vol_test);
  const double s1 = lob::population_std(vol_train), s2 = lob::population_std(vol_test);
  // Pooled standard error with the window length as an effective-sample cut:
  // rolling windows overlap, so adjacent values are strongly dependent.
  const double n_eff1 = static_cast<double>(vol_train.size()) / 500.0;
  const double n_eff2 = static_cast<double>(vol_test.size()) / 500.0;
  const double se = std::sqrt(s1 * s1 / n_eff1 + s2 * s2 / n_eff2);
  INFO("m1 ", m1, " m2 ", m2, " se ", se);
  CHECK(m2 - m1 > 3.0 * se);
}

#include "lobirl/lob/tick.hpp"

#include <cmath>
#include <stdexcept>

namespace lobirl::lob {

namespace {

bool finite_positive(double v) { return std::isfinite(v) && v > 0.0; }

}  // namespace

std::string validate_tick(const LobTick& tick) {
  for (int i = 0; i < 3; ++i) {
    if (!finite_positive(tick.bids[i].price)) return "bid price " + std::to_string(i + 1) + " not positive";
    if (!finite_positive(tick.asks[i].price)) return "ask price " + std::to_string(i + 1) + " not positive";
    if (!finite_positive(tick.bids[i].size)) return "bid size " + std::to_string(i + 1) + " not positive";
    if (!finite_positive(tick.asks[i].size)) return "ask size " + std::to_string(i + 1) + " not positive";
  }
  for (int i = 1; i < 3; ++i) {
    if (!(tick.bids[i].price < tick.bids[i - 1].price)) return "bid prices not strictly decreasing";
    if (!(tick.asks[i].price > tick.asks[i - 1].price)) return "ask prices not strictly increasing";
  }
  if (!(tick.bids[0].price < tick.asks[0].price)) return "crossed book: best bid >= best ask";
  if (!finite_positive(tick.last_trade.price)) return "trade price not positive";
  if (!finite_positive(tick.last_trade.size)) return "trade size not positive";
  return {};
}

void RegimeParams::validate() const {
  if (!(volatility > 0.0)) throw std::invalid_argument("RegimeParams: volatility must be > 0");
  if (!(tick_size > 0.0)) throw std::invalid_argument("RegimeParams: tick_size must be > 0");
  if (base_spread < tick_size) throw std::invalid_argument("RegimeParams: base_spread must be >= tick_size");
  if (!(mean_order_size > 0.0)) throw std::invalid_argument("RegimeParams: mean_order_size must be > 0");
  if (!(anchor_price > 0.0)) throw std::invalid_argument("RegimeParams: anchor_price must be > 0");
  if (mean_reversion < 0.0 || mean_reversion >= 1.0) throw std::invalid_argument("RegimeParams: mean_reversion in [0,1)");
  if (imbalance_persistence < 0.0 || imbalance_persistence >= 1.0) {
    throw std::invalid_argument("RegimeParams: imbalance_persistence in [0,1)");
  }
  if (tick_interval_ms <= 0) throw std::invalid_argument("RegimeParams: tick_interval_ms must be > 0");
}

RegimeParams train_regime_preset() {
  RegimeParams p;
  p.label = "train";
  return p;
}

RegimeParams test_regime_preset() {
  RegimeParams p;
  p.label = "test";
  p.volatility = 2.0 * p.volatility;
  return p;
}

}  // namespace lobirl::lob

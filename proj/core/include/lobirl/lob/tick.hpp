#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

namespace lobirl::lob {

struct Level {
  double price = 0.0;
  double size = 0.0;
  bool operator==(const Level&) const = default;
};

/// One order-book snapshot: three bid and ask levels plus the last trade.
/// Valid ticks have strictly decreasing bid prices, strictly increasing ask
/// prices, best bid < best ask, and positive prices and sizes throughout.
struct LobTick {
  std::int64_t timestamp_ms = 0;
  std::array<Level, 3> bids{};
  std::array<Level, 3> asks{};
  Level last_trade{};
  bool operator==(const LobTick&) const = default;
};

/// Empty string when the tick is valid, otherwise a description of the first
/// violated invariant.
std::string validate_tick(const LobTick& tick);

inline double mid_price(const LobTick& tick) { return 0.5 * (tick.bids[0].price + tick.asks[0].price); }

/// Synthetic market regime. Volatility separates the train and test regimes;
/// the imbalance channel makes top-of-book size imbalance mildly predictive
/// of the next mid move, so trained policies have something real to learn.
struct RegimeParams {
  double mean_reversion = 0.005;       // pull toward anchor_price per tick
  double volatility = 0.05;            // std of mid increments, price units per tick
  double base_spread = 0.02;           // quoted spread, >= tick_size
  double tick_size = 0.01;
  double mean_order_size = 100.0;
  std::string label = "train";
  double anchor_price = 100.0;
  double imbalance_strength = 0.04;    // drift per unit of book imbalance
  double imbalance_persistence = 0.97; // AR(1) coefficient of the imbalance
  std::int64_t start_timestamp_ms = 0;
  std::int64_t tick_interval_ms = 100;

  void validate() const;  // throws std::invalid_argument on bad fields
};

RegimeParams train_regime_preset();
RegimeParams test_regime_preset();  // doubled volatility

}  // namespace lobirl::lob

#include "lobirl/lob/synth.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "lobirl/num/rng.hpp"

namespace lobirl::lob {

std::vector<LobTick> generate_synthetic(const RegimeParams& params, int n_ticks, std::uint64_t seed) {
  params.validate();
  if (n_ticks <= 0) throw std::invalid_argument("generate_synthetic: n_ticks must be > 0");

  num::Rng rng(seed);
  const double tick = params.tick_size;
  const double half = std::max(0.5 * params.base_spread, tick);
  const double price_floor = std::max(0.05 * params.anchor_price, 20.0 * tick);
  const double rho = params.imbalance_persistence;
  const double imb_innovation = std::sqrt(std::max(0.0, 1.0 - rho * rho)) * 0.5;

  std::vector<LobTick> out;
  out.reserve(static_cast<std::size_t>(n_ticks));

  double mid = params.anchor_price;
  double imb = 0.0;
  for (int t = 0; t < n_ticks; ++t) {
    imb = rho * imb + imb_innovation * rng.normal();
    imb = std::clamp(imb, -0.98, 0.98);
    const double drift = params.imbalance_strength * imb + params.mean_reversion * (params.anchor_price - mid);
    mid += drift + params.volatility * rng.normal();
    mid = std::max(mid, price_floor);

    const double best_bid = std::floor((mid - half) / tick) * tick;
    double best_ask = std::ceil((mid + half) / tick) * tick;
    if (best_ask <= best_bid) best_ask = best_bid + tick;

    LobTick snapshot;
    snapshot.timestamp_ms = params.start_timestamp_ms + static_cast<std::int64_t>(t) * params.tick_interval_ms;
    for (int level = 0; level < 3; ++level) {
      snapshot.bids[level].price = best_bid - level * tick;
      snapshot.asks[level].price = best_ask + level * tick;
    }
    // Imbalance is visible at the touch; deeper levels carry plain noise.
    snapshot.bids[0].size = params.mean_order_size * (1.0 + 0.8 * imb) * std::exp(0.25 * rng.normal());
    snapshot.asks[0].size = params.mean_order_size * (1.0 - 0.8 * imb) * std::exp(0.25 * rng.normal());
    for (int level = 1; level < 3; ++level) {
      snapshot.bids[level].size = params.mean_order_size * std::exp(0.25 * rng.normal());
      snapshot.asks[level].size = params.mean_order_size * std::exp(0.25 * rng.normal());
    }
    const bool buy_trade = rng.bernoulli(0.5 + 0.25 * imb);
    snapshot.last_trade.price = buy_trade ? snapshot.asks[0].price : snapshot.bids[0].price;
    snapshot.last_trade.size = 0.5 * params.mean_order_size * std::exp(0.3 * rng.normal());

    out.push_back(snapshot);
  }
  return out;
}

}  // namespace lobirl::lob

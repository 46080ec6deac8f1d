#pragma once

#include <vector>

#include "lobirl/lob/tick.hpp"

namespace lobirl::lob {

std::vector<double> mid_series(const std::vector<LobTick>& ticks);

/// Rolling mid-price volatility. A window covers `window_len` consecutive
/// mids, i.e. window_len - 1 log-returns, and reports their population
/// standard deviation. n mids yield n - window_len + 1 values.
struct MarketStats {
  std::vector<double> mids;
  int window_len = 0;
  std::vector<double> volatility;
};

/// Requires mids.size() >= window_len >= 2. O(n) via rolling sums.
MarketStats rolling_volatility(const std::vector<double>& mids, int window_len);

double mean_of(const std::vector<double>& v);
double population_std(const std::vector<double>& v);

}  // namespace lobirl::lob

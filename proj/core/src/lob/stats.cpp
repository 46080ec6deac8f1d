#include "lobirl/lob/stats.hpp"

#include <cmath>
#include <stdexcept>

namespace lobirl::lob {

std::vector<double> mid_series(const std::vector<LobTick>& ticks) {
  std::vector<double> out;
  out.reserve(ticks.size());
  for (const LobTick& t : ticks) out.push_back(mid_price(t));
  return out;
}

MarketStats rolling_volatility(const std::vector<double>& mids, int window_len) {
  const int n = static_cast<int>(mids.size());
  if (window_len < 2) throw std::invalid_argument("rolling_volatility: window_len must be >= 2");
  if (n < window_len) {
    throw std::invalid_argument("rolling_volatility: need at least " + std::to_string(window_len) + " mids, got " +
                                std::to_string(n));
  }
  MarketStats stats;
  stats.mids = mids;
  stats.window_len = window_len;

  std::vector<double> returns(static_cast<std::size_t>(n) - 1);
  for (int i = 0; i + 1 < n; ++i) {
    returns[static_cast<std::size_t>(i)] = std::log(mids[static_cast<std::size_t>(i) + 1] / mids[static_cast<std::size_t>(i)]);
  }

  const int per_window = window_len - 1;  // returns per window
  const int n_windows = n - window_len + 1;
  stats.volatility.reserve(static_cast<std::size_t>(n_windows));

  double sum = 0.0, sumsq = 0.0;
  for (int i = 0; i < per_window; ++i) {
    sum += returns[static_cast<std::size_t>(i)];
    sumsq += returns[static_cast<std::size_t>(i)] * returns[static_cast<std::size_t>(i)];
  }
  for (int w = 0; w < n_windows; ++w) {
    const double mean = sum / per_window;
    const double var = std::max(0.0, sumsq / per_window - mean * mean);
    stats.volatility.push_back(std::sqrt(var));
    if (w + 1 < n_windows) {
      const double leaving = returns[static_cast<std::size_t>(w)];
      const double entering = returns[static_cast<std::size_t>(w) + per_window];
      sum += entering - leaving;
      sumsq += entering * entering - leaving * leaving;
    }
  }
  return stats;
}

double mean_of(const std::vector<double>& v) {
  if (v.empty()) throw std::invalid_argument("mean_of: empty series");
  double s = 0.0;
  for (double x : v) s += x;
  return s / static_cast<double>(v.size());
}

double population_std(const std::vector<double>& v) {
  const double m = mean_of(v);
  double s = 0.0;
  for (double x : v) s += (x - m) * (x - m);
  return std::sqrt(s / static_cast<double>(v.size()));
}

}  // namespace lobirl::lob

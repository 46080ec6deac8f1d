#include "lobirl/lob/window.hpp"

#include <cmath>
#include <stdexcept>

namespace lobirl::lob {

std::vector<LobWindow> make_windows(const std::vector<LobTick>& ticks) {
  const int n = static_cast<int>(ticks.size());
  if (n < kWindowTicks) {
    throw std::invalid_argument("make_windows: need at least " + std::to_string(kWindowTicks) + " ticks, got " +
                                std::to_string(n));
  }
  for (int i = 1; i < n; ++i) {
    if (ticks[static_cast<std::size_t>(i)].timestamp_ms <= ticks[static_cast<std::size_t>(i) - 1].timestamp_ms) {
      throw std::invalid_argument("make_windows: timestamps not strictly increasing at index " + std::to_string(i));
    }
  }

  constexpr int kPriceEntries = kWindowTicks * kBookLevels * 2;  // 60
  std::vector<LobWindow> out;
  out.reserve(static_cast<std::size_t>(n - kWindowTicks + 1));

  for (int start = 0; start + kWindowTicks <= n; ++start) {
    LobWindow w;
    const LobTick& first = ticks[static_cast<std::size_t>(start)];
    const LobTick& last = ticks[static_cast<std::size_t>(start + kWindowTicks - 1)];
    w.first_mid = mid_price(first);
    w.last_mid = mid_price(last);
    w.last_timestamp_ms = last.timestamp_ms;

    double price_sq = 0.0;
    double size_sum = 0.0, size_sq = 0.0;
    for (int t = 0; t < kWindowTicks; ++t) {
      const LobTick& tk = ticks[static_cast<std::size_t>(start + t)];
      for (int level = 0; level < kBookLevels; ++level) {
        const double dp_b = tk.bids[level].price - w.first_mid;
        const double dp_a = tk.asks[level].price - w.first_mid;
        price_sq += dp_b * dp_b + dp_a * dp_a;
        const double ls_b = std::log1p(tk.bids[level].size);
        const double ls_a = std::log1p(tk.asks[level].size);
        size_sum += ls_b + ls_a;
        size_sq += ls_b * ls_b + ls_a * ls_a;
      }
    }
    const double price_scale = std::sqrt(price_sq / kPriceEntries + 1e-12);
    const double size_mean = size_sum / kPriceEntries;
    const double size_var = std::max(0.0, size_sq / kPriceEntries - size_mean * size_mean);
    const double size_scale = std::sqrt(size_var + 1e-12);

    int f = 0;
    for (int t = 0; t < kWindowTicks; ++t) {
      const LobTick& tk = ticks[static_cast<std::size_t>(start + t)];
      for (int level = 0; level < kBookLevels; ++level) {
        w.features[f++] = (tk.bids[level].price - w.first_mid) / price_scale;
        w.features[f++] = (std::log1p(tk.bids[level].size) - size_mean) / size_scale;
        w.features[f++] = (tk.asks[level].price - w.first_mid) / price_scale;
        w.features[f++] = (std::log1p(tk.asks[level].size) - size_mean) / size_scale;
      }
    }
    out.push_back(w);
  }
  return out;
}

num::Tensor window_matrix(const std::vector<LobWindow>& windows, std::size_t first, std::size_t count) {
  if (first + count > windows.size()) {
    throw std::invalid_argument("window_matrix: range exceeds available windows");
  }
  num::Tensor m({static_cast<int>(count), kWindowFeatures});
  for (std::size_t i = 0; i < count; ++i) {
    for (int j = 0; j < kWindowFeatures; ++j) {
      m(static_cast<int>(i), j) = windows[first + i].features[static_cast<std::size_t>(j)];
    }
  }
  return m;
}

}  // namespace lobirl::lob

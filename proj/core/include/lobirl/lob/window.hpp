#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "lobirl/lob/tick.hpp"
#include "lobirl/num/tensor.hpp"

namespace lobirl::lob {

inline constexpr int kWindowTicks = 10;
inline constexpr int kBookLevels = 3;
inline constexpr int kFeaturesPerLevel = 4;  // bid price, bid size, ask price, ask size
inline constexpr int kWindowFeatures = kWindowTicks * kBookLevels * kFeaturesPerLevel;  // 120

/// Ten consecutive ticks flattened to a 120-feature vector, normalized per
/// window:
///   prices: centered at the first tick's mid, divided by the RMS deviation
///           of all 60 price entries from that mid (epsilon-guarded);
///   sizes:  log1p-transformed, then z-scored over the 60 size entries.
/// Feature order per tick and level: bid price, bid size, ask price, ask size.
struct LobWindow {
  std::array<double, kWindowFeatures> features{};
  double first_mid = 0.0;
  double last_mid = 0.0;              // true mid of the newest tick
  std::int64_t last_timestamp_ms = 0;
};

/// Overlapping stride-1 windows; requires at least kWindowTicks ticks with
/// strictly increasing timestamps. n ticks yield n - 9 windows.
std::vector<LobWindow> make_windows(const std::vector<LobTick>& ticks);

/// Stacks [count x 120] rows starting at `first` into a training matrix.
num::Tensor window_matrix(const std::vector<LobWindow>& windows, std::size_t first, std::size_t count);

}  // namespace lobirl::lob

#pragma once

#include <cstdint>
#include <vector>

#include "lobirl/lob/tick.hpp"

namespace lobirl::lob {

/// Seeded synthetic LOB stream. The mid price follows a mean-reverting random
/// walk with regime volatility plus a drift proportional to a persistent
/// top-of-book size imbalance; quoted levels sit at mid +/- spread/2 with
/// per-level tick offsets and positive lognormal-ish sizes. Every emitted
/// tick satisfies the LobTick invariants by construction.
std::vector<LobTick> generate_synthetic(const RegimeParams& params, int n_ticks, std::uint64_t seed);

}  // namespace lobirl::lob

#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "lobirl/num/tape.hpp"

namespace lobirl::num {

/// Self-describing parameter snapshot, one JSON document per model:
///   {
///     "format":     "lobirl-snapshot-v1",
///     "model_kind": "<kind>",
///     "seed":       <uint64>,
///     "step":       <int64>,     // optimizer steps at save time
///     "params":     [ {"name": "...", "shape": [..], "data": [..]}, ... ]
///   }
/// Values are written with shortest round-trip formatting, so a
/// save/load cycle reproduces every double bit-for-bit.
struct SnapshotMeta {
  std::string model_kind;
  std::uint64_t seed = 0;
  std::int64_t step = 0;
};

void save_snapshot(const std::filesystem::path& path, const SnapshotMeta& meta, const std::vector<Parameter*>& params);

/// Loads values into `params` by name; every snapshot entry must match an
/// existing parameter with the same shape and vice versa.
SnapshotMeta load_snapshot(const std::filesystem::path& path, const std::vector<Parameter*>& params);

SnapshotMeta peek_snapshot(const std::filesystem::path& path);

}  // namespace lobirl::num

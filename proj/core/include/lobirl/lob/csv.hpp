#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "lobirl/lob/tick.hpp"

namespace lobirl::lob {

/// Fixed 15-column tick schema, one header line:
///   timestamp_ms,bid_px_1,bid_px_2,bid_px_3,bid_sz_1,bid_sz_2,bid_sz_3,
///   ask_px_1,ask_px_2,ask_px_3,ask_sz_1,ask_sz_2,ask_sz_3,trade_px,trade_sz
/// Floats are written with shortest round-trip formatting, so
/// parse(serialize(x)) == x holds exactly.
extern const char* const kCsvHeader;

struct ParseResult {
  std::vector<LobTick> ticks;
  std::vector<std::string> warnings;  // one entry per rejected row, with line number
};

/// Reads ticks in timestamp order. Rows violating tick invariants (crossed
/// book included) are rejected with a line-numbered diagnostic; a timestamp
/// that does not strictly increase relative to the last accepted row is a
/// hard error. An empty file yields an empty sequence plus a warning.
ParseResult parse_csv(const std::filesystem::path& path);

void write_csv(const std::filesystem::path& path, const std::vector<LobTick>& ticks);

std::string format_double(double v);  // shortest round-trip, locale-independent

}  // namespace lobirl::lob

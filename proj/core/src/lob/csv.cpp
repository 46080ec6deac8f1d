#include "lobirl/lob/csv.hpp"

#include <charconv>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace lobirl::lob {

const char* const kCsvHeader =
    "timestamp_ms,bid_px_1,bid_px_2,bid_px_3,bid_sz_1,bid_sz_2,bid_sz_3,"
    "ask_px_1,ask_px_2,ask_px_3,ask_sz_1,ask_sz_2,ask_sz_3,trade_px,trade_sz";

std::string format_double(double v) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

namespace {

std::vector<std::string> split_fields(const std::string& line) {
  std::vector<std::string> out;
  std::string field;
  std::istringstream is(line);
  while (std::getline(is, field, ',')) out.push_back(field);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

bool parse_number(const std::string& s, double& out) {
  if (s.empty()) return false;
  char* end = nullptr;
  out = std::strtod(s.c_str(), &end);
  return end == s.c_str() + s.size();
}

bool parse_row(const std::vector<std::string>& fields, LobTick& tick, std::string& why) {
  if (fields.size() != 15) {
    why = "expected 15 columns, got " + std::to_string(fields.size());
    return false;
  }
  double ts = 0.0;
  if (!parse_number(fields[0], ts)) {
    why = "unparseable timestamp '" + fields[0] + "'";
    return false;
  }
  tick.timestamp_ms = static_cast<std::int64_t>(ts);
  double values[14];
  for (int i = 0; i < 14; ++i) {
    if (!parse_number(fields[static_cast<std::size_t>(i) + 1], values[i])) {
      why = "unparseable number '" + fields[static_cast<std::size_t>(i) + 1] + "' in column " + std::to_string(i + 2);
      return false;
    }
  }
  for (int i = 0; i < 3; ++i) {
    tick.bids[i].price = values[i];
    tick.bids[i].size = values[3 + i];
    tick.asks[i].price = values[6 + i];
    tick.asks[i].size = values[9 + i];
  }
  tick.last_trade.price = values[12];
  tick.last_trade.size = values[13];
  why = validate_tick(tick);
  return why.empty();
}

}  // namespace

ParseResult parse_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("parse_csv: cannot open " + path.string());
  ParseResult result;
  std::string line;
  if (!std::getline(in, line)) {
    result.warnings.push_back("empty file: " + path.string());
    return result;
  }
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != kCsvHeader) {
    throw std::runtime_error("parse_csv: " + path.string() + " header does not match the documented tick schema");
  }
  int line_no = 1;
  std::int64_t last_ts = INT64_MIN;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    LobTick tick;
    std::string why;
    if (!parse_row(split_fields(line), tick, why)) {
      result.warnings.push_back("line " + std::to_string(line_no) + ": rejected (" + why + ")");
      continue;
    }
    if (tick.timestamp_ms <= last_ts) {
      throw std::runtime_error("parse_csv: " + path.string() + " line " + std::to_string(line_no) +
                               ": timestamp not strictly increasing");
    }
    last_ts = tick.timestamp_ms;
    result.ticks.push_back(tick);
  }
  if (result.ticks.empty() && result.warnings.empty()) {
    result.warnings.push_back("no data rows in " + path.string());
  }
  return result;
}

void write_csv(const std::filesystem::path& path, const std::vector<LobTick>& ticks) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("write_csv: cannot open " + path.string() + " for writing");
  out << kCsvHeader << "\n";
  for (const LobTick& t : ticks) {
    out << t.timestamp_ms;
    for (int i = 0; i < 3; ++i) out << ',' << format_double(t.bids[i].price);
    for (int i = 0; i < 3; ++i) out << ',' << format_double(t.bids[i].size);
    for (int i = 0; i < 3; ++i) out << ',' << format_double(t.asks[i].price);
    for (int i = 0; i < 3; ++i) out << ',' << format_double(t.asks[i].size);
    out << ',' << format_double(t.last_trade.price) << ',' << format_double(t.last_trade.size) << "\n";
  }
  if (!out) throw std::runtime_error("write_csv: write failed for " + path.string());
}

}  // namespace lobirl::lob

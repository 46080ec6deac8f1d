#include "lobirl/num/snapshot.hpp"

#include <fstream>
#include <map>
#include <stdexcept>

#include <json.hpp>

namespace lobirl::num {

namespace {

constexpr const char* kFormat = "lobirl-snapshot-v1";

nlohmann::json read_json(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("snapshot: cannot open " + path.string());
  nlohmann::json j;
  in >> j;
  return j;
}

}  // namespace

void save_snapshot(const std::filesystem::path& path, const SnapshotMeta& meta, const std::vector<Parameter*>& params) {
  nlohmann::json j;
  j["format"] = kFormat;
  j["model_kind"] = meta.model_kind;
  j["seed"] = meta.seed;
  j["step"] = meta.step;
  nlohmann::json entries = nlohmann::json::array();
  for (const Parameter* p : params) {
    nlohmann::json e;
    e["name"] = p->name;
    e["shape"] = p->value.shape();
    e["data"] = p->value.flat();
    entries.push_back(std::move(e));
  }
  j["params"] = std::move(entries);
  std::ofstream out(path);
  if (!out) throw std::runtime_error("snapshot: cannot write " + path.string());
  out << j.dump(1) << "\n";
  if (!out) throw std::runtime_error("snapshot: write failed for " + path.string());
}

SnapshotMeta load_snapshot(const std::filesystem::path& path, const std::vector<Parameter*>& params) {
  const nlohmann::json j = read_json(path);
  if (j.value("format", "") != kFormat) {
    throw std::runtime_error("snapshot: " + path.string() + " has unknown format '" + j.value("format", "") + "'");
  }
  SnapshotMeta meta;
  meta.model_kind = j.value("model_kind", "");
  meta.seed = j.value("seed", std::uint64_t{0});
  meta.step = j.value("step", std::int64_t{0});

  std::map<std::string, const nlohmann::json*> by_name;
  for (const auto& e : j.at("params")) by_name[e.at("name").get<std::string>()] = &e;
  if (by_name.size() != params.size()) {
    throw std::runtime_error("snapshot: " + path.string() + " holds " + std::to_string(by_name.size()) +
                             " parameters, model has " + std::to_string(params.size()));
  }
  for (Parameter* p : params) {
    const auto it = by_name.find(p->name);
    if (it == by_name.end()) throw std::runtime_error("snapshot: missing parameter '" + p->name + "' in " + path.string());
    const nlohmann::json& e = *it->second;
    const auto shape = e.at("shape").get<std::vector<int>>();
    if (shape != p->value.shape()) {
      throw std::runtime_error("snapshot: shape mismatch for '" + p->name + "' in " + path.string());
    }
    p->value = Tensor(shape, e.at("data").get<std::vector<double>>());
    p->zero_grad();
  }
  return meta;
}

SnapshotMeta peek_snapshot(const std::filesystem::path& path) {
  const nlohmann::json j = read_json(path);
  SnapshotMeta meta;
  meta.model_kind = j.value("model_kind", "");
  meta.seed = j.value("seed", std::uint64_t{0});
  meta.step = j.value("step", std::int64_t{0});
  return meta;
}

}  // namespace lobirl::num

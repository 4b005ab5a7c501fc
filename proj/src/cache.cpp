// Copyright 2026 The spinwitness authors
// SPDX-License-Identifier: Apache-2.0

#include "spinwitness/cache.hpp"

#include <chrono>
#include <cstdlib>
#include <fstream>

#include "spinwitness/hamiltonian.hpp"
#include "spinwitness/version.hpp"

namespace spinwitness {

namespace {

std::string timestamp_utc() {
  const auto now = std::chrono::system_clock::now();
  const std::time_t t = std::chrono::system_clock::to_time_t(now);
  char buffer[32];
  std::tm tm_utc{};
  gmtime_r(&t, &tm_utc);
  std::strftime(buffer, sizeof(buffer), "%Y-%m-%dT%H:%M:%SZ", &tm_utc);
  return buffer;
}

nlohmann::json tolerances_of(const RunConfig& cfg) {
  return {{"z_tol", cfg.z_tol},
          {"eig_residual_tol", cfg.eig_residual_tol},
          {"degeneracy_tol", cfg.degeneracy_tol}};
}

}  // namespace

MinimaCache::MinimaCache(std::filesystem::path file) : path_(std::move(file)) {
  records_ = nlohmann::json::object();
  std::ifstream in(path_);
  if (!in) return;
  nlohmann::json doc = nlohmann::json::parse(in, nullptr, /*allow_exceptions=*/false);
  if (doc.is_object() && doc.value("schema", -1) == kCacheSchemaVersion &&
      doc.contains("records") && doc["records"].is_object())
    records_ = doc["records"];
}

std::filesystem::path MinimaCache::default_path() {
  if (const char* env = std::getenv("SPINWITNESS_CACHE")) return env;
  if (const char* xdg = std::getenv("XDG_DATA_HOME"))
    return std::filesystem::path(xdg) / "spinwitness" / "cache.json";
  if (const char* home = std::getenv("HOME"))
    return std::filesystem::path(home) / ".local" / "share" / "spinwitness" / "cache.json";
  return "spinwitness-cache.json";
}

std::string MinimaCache::key(HalfInt s, int sites, Topology topology,
                             std::optional<int> partition) {
  std::string out = "2s=" + std::to_string(s.twice()) + ";n=" + std::to_string(sites) + ";" +
                    (topology == Topology::Chain ? "chain" : "ring") + ";";
  out += partition ? "na=" + std::to_string(*partition) : std::string("min");
  return out;
}

std::optional<nlohmann::json> MinimaCache::lookup(const std::string& key,
                                                  const RunConfig& cfg) const {
  const auto it = records_.find(key);
  if (it == records_.end()) return std::nullopt;
  const auto& record = *it;
  if (!record.is_object() || record.value("version", "") != kVersion) return std::nullopt;
  if (record.value("tolerances", nlohmann::json()) != tolerances_of(cfg)) return std::nullopt;
  if (!record.contains("value")) return std::nullopt;
  return record["value"];
}

void MinimaCache::store(const std::string& key, nlohmann::json value, const RunConfig& cfg) {
  records_[key] = {{"value", std::move(value)},
                   {"version", kVersion},
                   {"tolerances", tolerances_of(cfg)},
                   {"timestamp", timestamp_utc()}};
  dirty_ = true;
}

void MinimaCache::save() {
  if (!dirty_) return;
  if (path_.has_parent_path()) {
    std::error_code ec;
    std::filesystem::create_directories(path_.parent_path(), ec);
  }
  const auto tmp = path_.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::trunc);
    if (!out) return;  // cache is an optimization; never fail the run
    out << nlohmann::json{{"schema", kCacheSchemaVersion}, {"records", records_}}.dump(2) << "\n";
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path_, ec);
  if (!ec) dirty_ = false;
}

void MinimaCache::clear() {
  records_ = nlohmann::json::object();
  dirty_ = true;
}

std::size_t MinimaCache::size() const { return records_.size(); }

nlohmann::json MinimaCache::summary() const {
  nlohmann::json keys = nlohmann::json::array();
  for (auto it = records_.begin(); it != records_.end(); ++it) keys.push_back(it.key());
  return {{"path", path_.string()}, {"records", records_.size()}, {"keys", keys}};
}

}  // namespace spinwitness

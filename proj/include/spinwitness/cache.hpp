// Copyright 2026 The spinwitness authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <filesystem>
#include <optional>
#include <string>

#include <json.hpp>

#include "spinwitness/config.hpp"
#include "spinwitness/half_int.hpp"

namespace spinwitness {

enum class Topology;  // hamiltonian.hpp

/// Persistent JSON store for computed biseparable minima. Records carry the
/// code version and the tolerances they were computed with; a mismatch in
/// either invalidates the record. Values round-trip bit-identically
/// (shortest-exact double serialization).
class MinimaCache {
 public:
  explicit MinimaCache(std::filesystem::path file);

  /// $SPINWITNESS_CACHE, else the XDG data directory, else the working
  /// directory.
  static std::filesystem::path default_path();

  static std::string key(HalfInt s, int sites, Topology topology, std::optional<int> partition);

  std::optional<nlohmann::json> lookup(const std::string& key, const RunConfig& cfg) const;
  void store(const std::string& key, nlohmann::json value, const RunConfig& cfg);

  void save();
  void clear();

  std::size_t size() const;
  const std::filesystem::path& path() const { return path_; }
  nlohmann::json summary() const;

 private:
  std::filesystem::path path_;
  nlohmann::json records_;
  bool dirty_ = false;
};

}  // namespace spinwitness

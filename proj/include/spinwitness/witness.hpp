// Copyright 2026 The spinwitness authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "spinwitness/cache.hpp"
#include "spinwitness/config.hpp"
#include "spinwitness/half_int.hpp"
#include "spinwitness/hamiltonian.hpp"
#include "spinwitness/selfconsistent.hpp"

namespace spinwitness {

/// Covering of all bonds by overlapping k-site segments: chains of
/// n(k-1)+1 sites give n segments sharing endpoints, rings of n(k-1) give n
/// wrapped segments. Returns nothing when the site count does not decompose.
struct SegmentCover {
  int k = 0;
  int count = 0;                          // n_k
  std::vector<std::vector<int>> segments;  // 0-based site lists
};
std::optional<SegmentCover> decompose(int sites, Topology topology, int k);

/// Provider of chain biseparable minima, memoized in memory and optionally
/// through the persistent cache.
class MinimaSource {
 public:
  explicit MinimaSource(RunConfig cfg = {}, MinimaCache* cache = nullptr);

  /// Biseparable minimum of an open k-site chain (k = 2 gives -s^2, the
  /// polarized product pair).
  double chain_minimum(HalfInt s, int sites);

  PartitionScan chain_scan(HalfInt s, int sites);

  const RunConfig& config() const { return cfg_; }

 private:
  RunConfig cfg_;
  MinimaCache* cache_;
  std::map<std::pair<int, int>, PartitionScan> memo_;
};

struct ThresholdEntry {
  int k = 0;
  int count = 0;             // n_k
  double segment_minimum = 0;  // biseparable minimum of one k-site segment
  double bound = 0;            // count * segment_minimum
  std::optional<bool> violated;
};

struct WitnessReport {
  HalfInt s;
  int sites = 0;
  Topology topology = Topology::Chain;
  std::optional<double> measured_energy;
  std::vector<ThresholdEntry> thresholds;  // ordered by k
  std::optional<double> genuine_bound;     // chains only
  std::optional<bool> genuine_violated;
  std::optional<double> ground_energy;  // when the full chain is tractable
  int certified_k = 1;                  // highest k certified; < 2 means none
  bool genuine_certified = false;
  std::string validity_note;
};

/// Threshold skeleton: every k in 2..N whose segment decomposition exists,
/// plus (for chains) the genuine-N bound.
WitnessReport thresholds(HalfInt s, int sites, Topology topology, MinimaSource& minima);

/// Fills the violation flags and the verdict for a measured energy.
/// Energies below the physical ground energy (or, when that is intractable,
/// below the rigorous bond bound -bonds*s(s+1)) are rejected.
WitnessReport classify(WitnessReport report, double measured_energy);

struct GapReport {
  double ground_energy = 0;
  double gap_to_first_excited = 0;
  bool nondegenerate = false;
  double total_spin_squared = 0;  // <S^2> in the ground state
  double biseparable_minimum = 0;
  double gap = 0;  // biseparable_minimum - ground_energy
};

/// Ground-state facts for an even-length chain: nondegenerate singlet ground
/// state and a strictly positive gap between it and every biseparable state.
/// Refuses (throws) when the full dimension exceeds cfg.max_full_dimension.
GapReport gap_report(HalfInt s, int sites, MinimaSource& minima);

}  // namespace spinwitness

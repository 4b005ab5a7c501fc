// Copyright 2026 The spinwitness authors
// SPDX-License-Identifier: Apache-2.0

#include "spinwitness/witness.hpp"

#include <cmath>
#include <stdexcept>

#include "spinwitness/eigensolver.hpp"

namespace spinwitness {

namespace {

constexpr const char* kValidityNote =
    "Bounds hold for mixed states as well: energy is linear in the state and each bound is a "
    "minimum over the corresponding pure-state class.";

std::optional<double> full_ground_energy(HalfInt s, int sites, Topology topology,
                                         const RunConfig& cfg) {
  const ChainSpec spec{s, sites, topology};
  if (total_dimension(spec.dims()) > cfg.max_full_dimension) return std::nullopt;
  const auto h = heisenberg(spec);
  const auto decomposition = sz_sectors(h, spec);
  return ground_state_by_sector(decomposition, cfg).first.energy;
}

}  // namespace

std::optional<SegmentCover> decompose(int sites, Topology topology, int k) {
  if (k < 2) throw std::invalid_argument("segments need k >= 2");
  if (sites < k) return std::nullopt;
  SegmentCover cover;
  cover.k = k;
  if (topology == Topology::Chain) {
    if ((sites - 1) % (k - 1) != 0) return std::nullopt;
    cover.count = (sites - 1) / (k - 1);
    for (int seg = 0; seg < cover.count; ++seg) {
      std::vector<int> segment(k);
      for (int i = 0; i < k; ++i) segment[i] = seg * (k - 1) + i;
      cover.segments.push_back(std::move(segment));
    }
  } else {
    if (sites % (k - 1) != 0) return std::nullopt;
    cover.count = sites / (k - 1);
    for (int seg = 0; seg < cover.count; ++seg) {
      std::vector<int> segment(k);
      for (int i = 0; i < k; ++i) segment[i] = (seg * (k - 1) + i) % sites;
      cover.segments.push_back(std::move(segment));
    }
  }
  return cover;
}

MinimaSource::MinimaSource(RunConfig cfg, MinimaCache* cache)
    : cfg_(std::move(cfg)), cache_(cache) {
  cfg_.validate();
}

PartitionScan MinimaSource::chain_scan(HalfInt s, int sites) {
  const auto memo_key = std::make_pair(s.twice(), sites);
  if (auto it = memo_.find(memo_key); it != memo_.end()) return it->second;

  PartitionScan scan;
  bool from_cache = false;
  if (cache_) {
    from_cache = true;
    scan.partitions.resize(sites - 1);
    for (int block_a = 1; block_a <= sites - 1 && from_cache; ++block_a) {
      const auto record =
          cache_->lookup(MinimaCache::key(s, sites, Topology::Chain, block_a), cfg_);
      if (!record) {
        from_cache = false;
        break;
      }
      auto& p = scan.partitions[block_a - 1];
      p.partition = {s, sites, block_a};
      p.energy = (*record)["energy"].get<double>();
      p.z_a = (*record)["z_a"].get<double>();
      p.z_b = (*record)["z_b"].get<double>();
      p.start_point = (*record)["start_point"].get<double>();
      p.sweeps = (*record)["sweeps"].get<int>();
      p.converged = (*record)["converged"].get<bool>();
      p.degenerate_block = (*record)["degenerate_block"].get<bool>();
    }
    if (from_cache) {
      const auto min_record = cache_->lookup(MinimaCache::key(s, sites, Topology::Chain, {}), cfg_);
      if (min_record)
        scan.energy = (*min_record)["energy"].get<double>();
      else
        from_cache = false;
    }
  }

  if (!from_cache) {
    scan = min_biseparable(s, sites, cfg_);
    if (cache_) {
      for (const auto& p : scan.partitions)
        cache_->store(MinimaCache::key(s, sites, Topology::Chain, p.partition.block_a_sites),
                      {{"energy", p.energy},
                       {"z_a", p.z_a},
                       {"z_b", p.z_b},
                       {"start_point", p.start_point},
                       {"sweeps", p.sweeps},
                       {"converged", p.converged},
                       {"degenerate_block", p.degenerate_block}},
                      cfg_);
      cache_->store(MinimaCache::key(s, sites, Topology::Chain, {}), {{"energy", scan.energy}},
                    cfg_);
      cache_->save();
    }
  }
  memo_[memo_key] = scan;
  return scan;
}

double MinimaSource::chain_minimum(HalfInt s, int sites) { return chain_scan(s, sites).energy; }

WitnessReport thresholds(HalfInt s, int sites, Topology topology, MinimaSource& minima) {
  if (sites < 2) throw std::invalid_argument("witness needs at least two sites");
  ChainSpec spec{s, sites, topology};
  spec.validate();

  WitnessReport report;
  report.s = s;
  report.sites = sites;
  report.topology = topology;
  report.validity_note = kValidityNote;
  for (int k = 2; k <= sites; ++k) {
    const auto cover = decompose(sites, topology, k);
    if (!cover) continue;
    ThresholdEntry entry;
    entry.k = k;
    entry.count = cover->count;
    entry.segment_minimum = minima.chain_minimum(s, k);
    entry.bound = cover->count * entry.segment_minimum;
    report.thresholds.push_back(entry);
  }
  if (topology == Topology::Chain) report.genuine_bound = minima.chain_minimum(s, sites);
  report.ground_energy = full_ground_energy(s, sites, topology, minima.config());
  return report;
}

WitnessReport classify(WitnessReport report, double measured_energy) {
  const double sv = report.s.to_double();
  const double bond_floor =
      -ChainSpec{report.s, report.sites, report.topology}.bonds() * sv * (sv + 1.0);
  const double floor = report.ground_energy ? *report.ground_energy : bond_floor;
  if (measured_energy < floor - 1e-6)
    throw std::invalid_argument("measured energy " + std::to_string(measured_energy) +
                                " lies below the physical minimum " + std::to_string(floor));

  report.measured_energy = measured_energy;
  report.certified_k = 1;
  for (auto& entry : report.thresholds) {
    entry.violated = measured_energy < entry.bound;
    if (*entry.violated) report.certified_k = std::max(report.certified_k, entry.k);
  }
  if (report.genuine_bound) {
    report.genuine_violated = measured_energy < *report.genuine_bound;
    report.genuine_certified = *report.genuine_violated;
  }
  return report;
}

GapReport gap_report(HalfInt s, int sites, MinimaSource& minima) {
  if (sites < 2 || sites % 2 != 0)
    throw std::invalid_argument("the gap statement applies to even chains");
  const ChainSpec spec{s, sites, Topology::Chain};
  const auto dim = total_dimension(spec.dims());
  if (dim > minima.config().max_full_dimension)
    throw std::runtime_error("full dimension " + std::to_string(dim) +
                             " exceeds the tractable limit " +
                             std::to_string(minima.config().max_full_dimension));

  const auto h = heisenberg(spec);
  const auto decomposition = sz_sectors(h, spec);
  const auto [ground, per_sector] = ground_state_by_sector(decomposition, minima.config());

  GapReport report;
  report.ground_energy = ground.energy;
  report.gap_to_first_excited = ground.gap_to_next;
  report.nondegenerate = !ground.degenerate;
  report.total_spin_squared = expectation(total_spin_squared(spec), ground.vector);
  report.biseparable_minimum = minima.chain_minimum(s, sites);
  report.gap = report.biseparable_minimum - report.ground_energy;
  return report;
}

}  // namespace spinwitness

// Copyright 2026 The spinwitness authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <vector>

#include "spinwitness/config.hpp"
#include "spinwitness/half_int.hpp"

namespace spinwitness {

/// Consecutive bipartition of an open chain: block A is the leftmost
/// block_a_sites spins, block B the rest.
struct PartitionSpec {
  HalfInt s;
  int total_sites = 2;
  int block_a_sites = 1;

  void validate() const;
  int block_b_sites() const { return total_sites - block_a_sites; }
};

/// Converged mean-field pair (z_A >= 0, z_B <= 0) and the biseparable energy
/// E_A0(z_B) + E_B0(z_A) - z_A z_B.
struct BiseparableMinimum {
  PartitionSpec partition;
  double z_a = 0;
  double z_b = 0;
  double energy = 0;
  double start_point = 0;  // z_B start value that produced this fixed point
  int sweeps = 0;
  bool converged = false;
  bool degenerate_block = false;  // a block ground state is degenerate at the fixed point
};

/// Damped fixed-point iteration over the start grid; returns the
/// lowest-energy converged fixed point (or the lowest non-converged iterate,
/// flagged, if no start converges).
BiseparableMinimum solve_partition(const PartitionSpec& partition, const RunConfig& cfg = {});

/// Scan over all bipartitions N_A = 1 ... N-1 (mirror symmetry halves the
/// work; mirrored entries are filled in). energy is exactly the minimum of
/// the per-partition list.
struct PartitionScan {
  double energy = 0;
  std::vector<BiseparableMinimum> partitions;
};
PartitionScan min_biseparable(HalfInt s, int sites, const RunConfig& cfg = {});

/// Ground energy of the three-spin block dressed by a fixed edge field -s
/// (the 1|3 bipartition of four spins collapses to this eigenproblem).
struct Quad13Result {
  double energy = 0;
  HalfInt sector_m;
};
Quad13Result quad_13_minimum(HalfInt s, const RunConfig& cfg = {});

}  // namespace spinwitness

// Copyright 2026 The spinwitness authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <vector>

#include "spinwitness/half_int.hpp"
#include "spinwitness/sparse_operator.hpp"
#include "spinwitness/spin_algebra.hpp"

namespace spinwitness {

enum class Topology { Chain, Ring };

/// Isotropic Heisenberg system of identical spins, exchange constant J = 1
/// (antiferromagnetic). Rings need at least three sites.
struct ChainSpec {
  HalfInt s;
  int sites = 1;
  Topology topology = Topology::Chain;

  void validate() const;
  std::vector<int> dims() const;
  int bonds() const { return topology == Topology::Chain ? sites - 1 : sites; }
};

/// H = sum over bonds of s_i . s_{i+1}, assembled in the real form
/// sz sz + (s+ s- + s- s+)/2.
SparseOperator heisenberg(const ChainSpec& spec);

/// H_block + z * s_z at a boundary site of an open sub-chain.
SparseOperator dressed_block(const ChainSpec& spec, int edge_site, double field);

/// Total S_z (diagonal).
SparseOperator total_sz(const ChainSpec& spec);

/// (sum_i s_i)^2; eigenvalues S(S+1).
SparseOperator total_spin_squared(const ChainSpec& spec);

/// Twice the total magnetic quantum number of every product-basis state,
/// computed in exact integer arithmetic.
std::vector<int> basis_two_m(const ChainSpec& spec);

struct Sector {
  HalfInt total_m;
  std::vector<int> indices;  // positions in the product basis
  SparseOperator block;
};

struct SectorDecomposition {
  ChainSpec spec;
  std::vector<Sector> sectors;  // ordered by total_m ascending
};

/// Splits H into total-S_z blocks. Sector membership comes from exact
/// integer 2M sums; refuses (throws) if H fails to commute with S_z within
/// 1e-10 entrywise.
SectorDecomposition sz_sectors(const SparseOperator& hamiltonian, const ChainSpec& spec);

/// Reassembles the full matrix from a decomposition (exact; used to verify
/// the split loses nothing).
SparseOperator reassemble(const SectorDecomposition& decomposition);

}  // namespace spinwitness

// Copyright 2026 The spinwitness authors
// SPDX-License-Identifier: Apache-2.0

#include "spinwitness/hamiltonian.hpp"

#include <cmath>
#include <map>
#include <stdexcept>

namespace spinwitness {

void ChainSpec::validate() const {
  if (s.twice() < 0) throw std::invalid_argument("negative spin");
  if (sites < 1) throw std::invalid_argument("need at least one site");
  if (topology == Topology::Ring && sites < 3)
    throw std::invalid_argument("a ring needs at least three sites");
}

std::vector<int> ChainSpec::dims() const { return std::vector<int>(sites, s.twice() + 1); }

namespace {

SparseOperator bond(const ChainSpec& spec, int i, int j) {
  const auto dims = spec.dims();
  const auto sz = spin_matrix(spec.s, SpinComponent::Z);
  const auto sp = spin_matrix(spec.s, SpinComponent::Plus);
  const auto sm = spin_matrix(spec.s, SpinComponent::Minus);
  auto term = product(embed(sz, i, dims), embed(sz, j, dims), /*symmetric=*/true);
  term = term + 0.5 * (product(embed(sp, i, dims), embed(sm, j, dims)) +
                       product(embed(sm, i, dims), embed(sp, j, dims)));
  term.symmetric = true;
  return term;
}

}  // namespace

SparseOperator heisenberg(const ChainSpec& spec) {
  spec.validate();
  const auto dims = spec.dims();
  if (spec.sites == 1 || spec.s.twice() == 0) {
    SparseOperator zero;
    zero.dims = dims;
    zero.matrix.resize(total_dimension(dims), total_dimension(dims));
    zero.symmetric = true;
    return zero;
  }
  SparseOperator h = bond(spec, 0, 1);
  for (int i = 1; i < spec.sites - 1; ++i) h = h + bond(spec, i, i + 1);
  if (spec.topology == Topology::Ring) h = h + bond(spec, spec.sites - 1, 0);
  return h;
}

SparseOperator dressed_block(const ChainSpec& spec, int edge_site, double field) {
  spec.validate();
  if (spec.topology != Topology::Chain)
    throw std::invalid_argument("dressed blocks are open sub-chains");
  if (edge_site != 0 && edge_site != spec.sites - 1)
    throw std::invalid_argument("edge site must be the first or last site of the block");
  auto h = heisenberg(spec);
  if (field != 0.0)
    h = h + field * embed(spin_matrix(spec.s, SpinComponent::Z), edge_site, spec.dims());
  return h;
}

SparseOperator total_sz(const ChainSpec& spec) {
  spec.validate();
  const auto dims = spec.dims();
  const auto two_m = basis_two_m(spec);
  std::vector<Eigen::Triplet<double>> entries;
  for (int i = 0; i < static_cast<int>(two_m.size()); ++i)
    if (two_m[i] != 0) entries.emplace_back(i, i, 0.5 * two_m[i]);
  return make_operator(dims, entries, true);
}

SparseOperator total_spin_squared(const ChainSpec& spec) {
  spec.validate();
  const auto dims = spec.dims();
  const double casimir = spec.s.to_double() * (spec.s.to_double() + 1.0);
  auto out = spec.sites * casimir * identity_operator(dims);
  const auto sz = spin_matrix(spec.s, SpinComponent::Z);
  const auto sp = spin_matrix(spec.s, SpinComponent::Plus);
  const auto sm = spin_matrix(spec.s, SpinComponent::Minus);
  for (int i = 0; i < spec.sites; ++i)
    for (int j = i + 1; j < spec.sites; ++j) {
      auto pair = product(embed(sz, i, dims), embed(sz, j, dims), true);
      pair = pair + 0.5 * (product(embed(sp, i, dims), embed(sm, j, dims)) +
                           product(embed(sm, i, dims), embed(sp, j, dims)));
      out = out + 2.0 * pair;
    }
  out.symmetric = true;
  return out;
}

std::vector<int> basis_two_m(const ChainSpec& spec) {
  spec.validate();
  const int d = spec.s.twice() + 1;
  const auto total = total_dimension(spec.dims());
  std::vector<int> two_m(total);
  for (std::int64_t idx = 0; idx < total; ++idx) {
    int sum = 0;
    std::int64_t rest = idx;
    for (int site = 0; site < spec.sites; ++site) {
      const int level = static_cast<int>(rest % d);
      rest /= d;
      sum += spec.s.twice() - 2 * level;
    }
    two_m[idx] = sum;
  }
  return two_m;
}

SectorDecomposition sz_sectors(const SparseOperator& hamiltonian, const ChainSpec& spec) {
  spec.validate();
  if (hamiltonian.dim() != total_dimension(spec.dims()))
    throw std::invalid_argument("operator dimension does not match the chain spec");
  const auto two_m = basis_two_m(spec);

  // [H, S_z] entry (r, c) is H_rc (M_c - M_r); S_z is diagonal, so the check
  // is a single pass over the nonzeros.
  double commutator = 0.0;
  for (int col = 0; col < hamiltonian.matrix.outerSize(); ++col)
    for (Eigen::SparseMatrix<double>::InnerIterator it(hamiltonian.matrix, col); it; ++it)
      commutator = std::max(
          commutator, std::abs(it.value() * 0.5 * (two_m[it.col()] - two_m[it.row()])));
  if (commutator > 1e-10)
    throw std::runtime_error("operator does not commute with total S_z (norm " +
                             std::to_string(commutator) + "); refusing to split");

  std::map<int, std::vector<int>> groups;
  for (int i = 0; i < static_cast<int>(two_m.size()); ++i) groups[two_m[i]].push_back(i);

  std::vector<int> local(two_m.size());
  std::map<int, int> sector_of;
  {
    int sid = 0;
    for (auto& [tm, idx] : groups) {
      sector_of[tm] = sid++;
      for (std::size_t k = 0; k < idx.size(); ++k) local[idx[k]] = static_cast<int>(k);
    }
  }

  SectorDecomposition out;
  out.spec = spec;
  std::vector<std::vector<Eigen::Triplet<double>>> entries(groups.size());
  for (int col = 0; col < hamiltonian.matrix.outerSize(); ++col)
    for (Eigen::SparseMatrix<double>::InnerIterator it(hamiltonian.matrix, col); it; ++it)
      entries[sector_of[two_m[it.row()]]].emplace_back(local[it.row()], local[it.col()],
                                                       it.value());
  int sid = 0;
  for (auto& [tm, idx] : groups) {
    Sector sector;
    sector.total_m = HalfInt::from_twice(tm);
    sector.indices = std::move(idx);
    sector.block.dims = {static_cast<int>(sector.indices.size())};
    sector.block.matrix.resize(sector.indices.size(), sector.indices.size());
    sector.block.matrix.setFromTriplets(entries[sid].begin(), entries[sid].end());
    sector.block.matrix.makeCompressed();
    sector.block.symmetric = hamiltonian.symmetric;
    out.sectors.push_back(std::move(sector));
    ++sid;
  }
  return out;
}

SparseOperator reassemble(const SectorDecomposition& decomposition) {
  const auto dims = decomposition.spec.dims();
  std::vector<Eigen::Triplet<double>> entries;
  for (const auto& sector : decomposition.sectors)
    for (int col = 0; col < sector.block.matrix.outerSize(); ++col)
      for (Eigen::SparseMatrix<double>::InnerIterator it(sector.block.matrix, col); it; ++it)
        entries.emplace_back(sector.indices[it.row()], sector.indices[it.col()], it.value());
  return make_operator(dims, entries, true);
}

}  // namespace spinwitness

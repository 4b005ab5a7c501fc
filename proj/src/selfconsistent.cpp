// Copyright 2026 The spinwitness authors
// SPDX-License-Identifier: Apache-2.0

#include "spinwitness/selfconsistent.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <stdexcept>

#include "spinwitness/eigensolver.hpp"
#include "spinwitness/hamiltonian.hpp"
#include "spinwitness/parallel.hpp"

namespace spinwitness {

void PartitionSpec::validate() const {
  if (s.twice() < 0) throw std::invalid_argument("negative spin");
  if (total_sites < 2) throw std::invalid_argument("partitions need at least two sites");
  if (block_a_sites < 1 || block_a_sites > total_sites - 1)
    throw std::invalid_argument("block A must hold between 1 and N-1 sites");
}

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Sector-blocked dressed-block solver. The undressed Hamiltonian and the
// edge s_z diagonal are built once; every solve at a field z applies
// H_sector + z diag(edge) matrix-free, with warm-started Lanczos above the
// small-dense cutoff.
class BlockSystem {
 public:
  BlockSystem(HalfInt s, int sites, int edge_site, const RunConfig& cfg)
      : spin_(s), cfg_(cfg) {
    cfg_.eig_residual_tol = std::min(cfg.eig_residual_tol, cfg.z_tol / 100.0);
    const ChainSpec spec{s, sites, Topology::Chain};
    const auto h = heisenberg(spec);
    auto decomposition = sz_sectors(h, spec);
    const auto edge_full = embed(spin_matrix(s, SpinComponent::Z), edge_site, spec.dims());
    Eigen::VectorXd diag = Eigen::VectorXd::Zero(edge_full.dim());
    for (int col = 0; col < edge_full.matrix.outerSize(); ++col)
      for (Eigen::SparseMatrix<double>::InnerIterator it(edge_full.matrix, col); it; ++it)
        diag[it.row()] = it.value();
    sectors_.reserve(decomposition.sectors.size());
    for (auto& sector : decomposition.sectors) {
      SectorData data;
      data.two_m = sector.total_m.twice();
      data.h = std::move(sector.block.matrix);
      data.edge.resize(sector.indices.size());
      for (std::size_t i = 0; i < sector.indices.size(); ++i)
        data.edge[i] = diag[sector.indices[i]];
      sectors_.push_back(std::move(data));
    }
    warm_.assign(sectors_.size(), {});
  }

  struct Solve {
    double energy = kInf;
    int winner = -1;
    // Edge expectations of every ground-state candidate within the
    // degeneracy tolerance (the winner's first).
    std::vector<double> candidate_expectations;
    bool tie = false;
  };

  Solve solve(double z) {
    Solve out;
    std::vector<double> energies(sectors_.size(), kInf);
    std::vector<double> expectations(sectors_.size(), 0.0);
    for (std::size_t i = 0; i < sectors_.size(); ++i) {
      const auto& sec = sectors_[i];
      const Eigen::Index dim = sec.h.rows();
      double e0;
      Eigen::VectorXd v0;
      if (dim <= kDenseCutoff) {
        Eigen::MatrixXd dense = Eigen::MatrixXd(sec.h);
        dense.diagonal() += z * sec.edge;
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(dense);
        e0 = es.eigenvalues()(0);
        v0 = es.eigenvectors().col(0);
      } else {
        LinearMap apply = [&](const Eigen::VectorXd& x, Eigen::VectorXd& y) {
          y.noalias() = sec.h * x;
          y += z * sec.edge.cwiseProduct(x);
        };
        const Eigen::VectorXd* warm = warm_[i].size() == dim ? &warm_[i] : nullptr;
        auto run = lowest_one(apply, dim, cfg_, warm);
        e0 = run.e0;
        v0 = std::move(run.v0);
        warm_[i] = v0;
      }
      energies[i] = e0;
      expectations[i] = v0.dot(sec.edge.cwiseProduct(v0));
      if (e0 < out.energy) {
        out.energy = e0;
        out.winner = static_cast<int>(i);
      }
    }
    for (std::size_t i = 0; i < sectors_.size(); ++i)
      if (static_cast<int>(i) == out.winner)
        out.candidate_expectations.insert(out.candidate_expectations.begin(), expectations[i]);
      else if (energies[i] <= out.energy + cfg_.degeneracy_tol)
        out.candidate_expectations.push_back(expectations[i]);
    out.tie = out.candidate_expectations.size() > 1;
    return out;
  }

  // Gap above the block ground state at field z (merges the winning
  // sector's internal gap with the other sectors' minima).
  double gap(double z) {
    double best = kInf, second = kInf, winner_gap = kInf;
    int winner = -1;
    std::vector<double> energies(sectors_.size());
    for (std::size_t i = 0; i < sectors_.size(); ++i) {
      const auto& sec = sectors_[i];
      const Eigen::Index dim = sec.h.rows();
      if (dim <= kDenseCutoff) {
        Eigen::MatrixXd dense = Eigen::MatrixXd(sec.h);
        dense.diagonal() += z * sec.edge;
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(dense);
        energies[i] = es.eigenvalues()(0);
        if (energies[i] < best) {
          best = energies[i];
          winner = static_cast<int>(i);
          winner_gap = dim > 1 ? es.eigenvalues()(1) - es.eigenvalues()(0) : kInf;
        }
      } else {
        LinearMap apply = [&](const Eigen::VectorXd& x, Eigen::VectorXd& y) {
          y.noalias() = sec.h * x;
          y += z * sec.edge.cwiseProduct(x);
        };
        const Eigen::VectorXd* warm = warm_[i].size() == dim ? &warm_[i] : nullptr;
        auto run = lowest_two(apply, dim, cfg_, warm);
        energies[i] = run.e0;
        warm_[i] = run.v0;
        if (energies[i] < best) {
          best = energies[i];
          winner = static_cast<int>(i);
          winner_gap = run.e1 - run.e0;
        }
      }
    }
    for (std::size_t i = 0; i < sectors_.size(); ++i)
      if (static_cast<int>(i) != winner) second = std::min(second, energies[i]);
    return std::min(second - best, winner_gap);
  }

  HalfInt spin() const { return spin_; }

 private:
  static constexpr Eigen::Index kDenseCutoff = 128;

  struct SectorData {
    int two_m;
    Eigen::SparseMatrix<double> h;
    Eigen::VectorXd edge;
  };
  HalfInt spin_;
  RunConfig cfg_;
  std::vector<SectorData> sectors_;
  std::vector<Eigen::VectorXd> warm_;
};

// Candidate selection: the largest (block A) or smallest (block B)
// expectation among the degenerate ground states; when the dressing field
// vanishes the spectrum is flip-symmetric, so the mirrored expectations are
// candidates too.
double pick_candidate(const std::vector<double>& expectations, bool maximize, bool allow_flip) {
  std::vector<double> cands = expectations;
  if (allow_flip)
    for (double e : expectations) cands.push_back(maximize ? std::abs(e) : -std::abs(e));
  return maximize ? *std::max_element(cands.begin(), cands.end())
                  : *std::min_element(cands.begin(), cands.end());
}

double nearest(const std::vector<double>& values, double target) {
  double best = values.front();
  for (double v : values)
    if (std::abs(v - target) < std::abs(best - target)) best = v;
  return best;
}

struct FixedPointRun {
  double z_a = 0, z_b = 0, energy = 0;
  int sweeps = 0;
  bool converged = false;
  bool degenerate = false;
};

FixedPointRun run_fixed_point(BlockSystem& a, BlockSystem& b, double z_b_start,
                              const RunConfig& cfg) {
  const double s = a.spin().to_double();
  FixedPointRun out;
  double z_b = z_b_start;
  std::optional<double> z_a;
  double lambda_a = cfg.damping, lambda_b = cfg.damping;
  int flips_a = 0, flips_b = 0;
  double prev_da = 0, prev_db = 0;

  auto damp = [](double old_value, double computed, double lambda) {
    return (1.0 - lambda) * old_value + lambda * computed;
  };
  auto track_oscillation = [](double delta, double& prev, int& flips, double& lambda) {
    if (delta * prev < 0) {
      if (++flips >= 3) {
        lambda = std::max(lambda / 2.0, 1.0 / 64.0);
        flips = 0;
      }
    } else {
      flips = 0;
    }
    prev = delta;
  };
  auto clamp_spin = [&](double z) { return std::clamp(z, -s, s); };

  for (int sweep = 1; sweep <= cfg.max_sweeps; ++sweep) {
    out.sweeps = sweep;
    const auto solve_a = a.solve(z_b);
    double z_a_value =
        pick_candidate(solve_a.candidate_expectations, /*maximize=*/true, std::abs(z_b) < 1e-14);
    if (z_a_value < 0 && z_a_value > -1e-11) z_a_value = 0;  // roundoff guard
    const double z_a_new = clamp_spin(z_a ? damp(*z_a, z_a_value, lambda_a) : z_a_value);
    const double delta_a = z_a ? z_a_new - *z_a : kInf;
    if (z_a) track_oscillation(delta_a, prev_da, flips_a, lambda_a);
    z_a = z_a_new;

    const auto solve_b = b.solve(*z_a);
    double z_b_value =
        pick_candidate(solve_b.candidate_expectations, /*maximize=*/false, std::abs(*z_a) < 1e-14);
    if (z_b_value > 0 && z_b_value < 1e-11) z_b_value = 0;
    const double z_b_new = clamp_spin(damp(z_b, z_b_value, lambda_b));
    const double delta_b = z_b_new - z_b;
    track_oscillation(delta_b, prev_db, flips_b, lambda_b);
    z_b = z_b_new;

    if (sweep >= 2 && std::max(std::abs(delta_a), std::abs(delta_b)) < cfg.z_tol) {
      out.converged = true;
      break;
    }
  }

  out.z_a = z_a.value_or(0.0);
  out.z_b = z_b;

  // Final energies at the converged fields, plus the self-consistency and
  // degeneracy checks the result contract promises.
  const auto final_a = a.solve(out.z_b);
  const auto final_b = b.solve(out.z_a);
  out.energy = final_a.energy + final_b.energy - out.z_a * out.z_b;
  const double z_a_check = nearest(final_a.candidate_expectations, out.z_a);
  const double z_b_check = nearest(final_b.candidate_expectations, out.z_b);
  if (std::abs(z_a_check - out.z_a) > 10 * cfg.z_tol ||
      std::abs(z_b_check - out.z_b) > 10 * cfg.z_tol)
    out.converged = false;
  out.degenerate = final_a.tie || final_b.tie;
  return out;
}

}  // namespace

BiseparableMinimum solve_partition(const PartitionSpec& partition, const RunConfig& cfg) {
  cfg.validate();
  partition.validate();
  BlockSystem block_a(partition.s, partition.block_a_sites, partition.block_a_sites - 1, cfg);
  BlockSystem block_b(partition.s, partition.block_b_sites(), 0, cfg);

  const double s = partition.s.to_double();
  std::optional<BiseparableMinimum> best_converged, best_any;
  for (double fraction : cfg.start_grid_fractions) {
    const double start = -fraction * s;
    const auto run = run_fixed_point(block_a, block_b, start, cfg);
    BiseparableMinimum candidate;
    candidate.partition = partition;
    candidate.z_a = run.z_a;
    candidate.z_b = run.z_b;
    candidate.energy = run.energy;
    candidate.start_point = start;
    candidate.sweeps = run.sweeps;
    candidate.converged = run.converged;
    candidate.degenerate_block = run.degenerate;
    if (!best_any || candidate.energy < best_any->energy - 1e-12) best_any = candidate;
    if (candidate.converged &&
        (!best_converged || candidate.energy < best_converged->energy - 1e-12))
      best_converged = candidate;
  }
  if (best_converged) {
    // Final degeneracy check needs the proper block gaps at the fixed point.
    best_converged->degenerate_block =
        block_a.gap(best_converged->z_b) < cfg.degeneracy_tol ||
        block_b.gap(best_converged->z_a) < cfg.degeneracy_tol;
    return *best_converged;
  }
  return *best_any;
}

PartitionScan min_biseparable(HalfInt s, int sites, const RunConfig& cfg) {
  cfg.validate();
  if (sites < 2) throw std::invalid_argument("need at least two sites");
  const int unique = sites / 2;  // N_A > N/2 mirrors N - N_A
  std::vector<BiseparableMinimum> computed(unique);
  parallel_for(unique, cfg.threads, [&](int i) {
    computed[i] = solve_partition({s, sites, i + 1}, cfg);
  });

  PartitionScan scan;
  scan.partitions.resize(sites - 1);
  for (int block_a = 1; block_a <= sites - 1; ++block_a) {
    if (block_a <= unique) {
      scan.partitions[block_a - 1] = computed[block_a - 1];
    } else {
      // Mirror image: blocks swap roles and the quantization axis flips.
      BiseparableMinimum mirrored = computed[sites - block_a - 1];
      mirrored.partition.block_a_sites = block_a;
      std::swap(mirrored.z_a, mirrored.z_b);
      mirrored.z_a = -mirrored.z_a;
      mirrored.z_b = -mirrored.z_b;
      scan.partitions[block_a - 1] = mirrored;
    }
  }
  scan.energy = scan.partitions.front().energy;
  for (const auto& p : scan.partitions) scan.energy = std::min(scan.energy, p.energy);
  return scan;
}

Quad13Result quad_13_minimum(HalfInt s, const RunConfig& cfg) {
  cfg.validate();
  if (s.twice() <= 0) throw std::invalid_argument("needs s > 0");
  const ChainSpec block{s, 3, Topology::Chain};
  const auto dressed = dressed_block(block, 0, -s.to_double());
  const auto decomposition = sz_sectors(dressed, block);
  const auto [ground, minima] = ground_state_by_sector(decomposition, cfg);
  return {ground.energy, ground.sector_m.value()};
}

}  // namespace spinwitness

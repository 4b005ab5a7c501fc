// Copyright 2026 The spinwitness authors
// SPDX-License-Identifier: Apache-2.0

#include "spinwitness/eigensolver.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <limits>
#include <random>

namespace spinwitness {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

Eigen::VectorXd seeded_start(Eigen::Index dim, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  Eigen::VectorXd v(dim);
  for (Eigen::Index i = 0; i < dim; ++i) v[i] = normal(rng);
  v.normalize();
  return v;
}

void orthogonalize(Eigen::VectorXd& w, const std::vector<Eigen::VectorXd>& against) {
  for (int pass = 0; pass < 2; ++pass)
    for (const auto& u : against) w -= u.dot(w) * u;
}

struct LanczosOutcome {
  double theta = 0;
  Eigen::VectorXd vector;
  int matvecs = 0;
  bool converged = false;
  double residual = kInf;
};

// Lowest Ritz pair in the subspace orthogonal to `deflate`. Full
// reorthogonalization against the Krylov basis and the deflation vectors;
// restarts from the best Ritz vector until the matvec budget is exhausted.
LanczosOutcome lanczos_lowest(const LinearMap& apply, Eigen::Index dim, const RunConfig& cfg,
                              Eigen::VectorXd start,
                              const std::vector<Eigen::VectorXd>& deflate) {
  LanczosOutcome out;
  orthogonalize(start, deflate);
  if (start.norm() < 1e-12) start = seeded_start(dim, cfg.seed + 1);
  orthogonalize(start, deflate);
  start.normalize();

  const int krylov = std::min<Eigen::Index>(cfg.krylov_dim, dim);
  std::vector<Eigen::VectorXd> basis;
  Eigen::VectorXd alpha(krylov), beta(krylov);
  Eigen::VectorXd w(dim);

  while (out.matvecs < cfg.max_eig_iterations) {
    basis.clear();
    basis.push_back(start);
    int steps = 0;
    bool breakdown = false;
    for (int j = 0; j < krylov && out.matvecs < cfg.max_eig_iterations; ++j) {
      apply(basis[j], w);
      ++out.matvecs;
      orthogonalize(w, deflate);
      alpha[j] = basis[j].dot(w);
      w -= alpha[j] * basis[j];
      if (j > 0) w -= beta[j - 1] * basis[j - 1];
      orthogonalize(w, basis);
      beta[j] = w.norm();
      steps = j + 1;
      if (beta[j] < 1e-13 * std::max(1.0, std::abs(alpha[j]))) {
        breakdown = true;  // exact invariant subspace
        break;
      }
      const bool last = j + 1 == krylov || out.matvecs >= cfg.max_eig_iterations;
      if (j >= 1 && (j % 5 == 0 || last)) {
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
        es.computeFromTridiagonal(alpha.head(steps), beta.head(steps - 1));
        const double theta = es.eigenvalues()(0);
        const double resid = std::abs(beta[j] * es.eigenvectors()(steps - 1, 0));
        if (resid <= cfg.eig_residual_tol * std::max(1.0, std::abs(theta))) {
          out.theta = theta;
          out.vector.setZero(dim);
          for (int i = 0; i < steps; ++i) out.vector += es.eigenvectors()(i, 0) * basis[i];
          out.vector.normalize();
          out.converged = true;
          out.residual = resid;
          return out;
        }
        out.residual = resid;
      }
      if (j + 1 < krylov) basis.push_back(w / beta[j]);
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
    es.computeFromTridiagonal(alpha.head(steps), beta.head(std::max(steps - 1, 0)));
    out.theta = es.eigenvalues()(0);
    Eigen::VectorXd ritz = Eigen::VectorXd::Zero(dim);
    for (int i = 0; i < steps; ++i) ritz += es.eigenvectors()(i, 0) * basis[i];
    ritz.normalize();
    out.vector = ritz;
    if (breakdown) {
      // The Krylov space is invariant: the Ritz value is exact.
      out.converged = true;
      out.residual = 0.0;
      return out;
    }
    start = ritz;  // restart
  }
  return out;
}

LowestPairs dense_lowest_two(const Eigen::MatrixXd& h) {
  LowestPairs out;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(h);
  out.e0 = es.eigenvalues()(0);
  out.v0 = es.eigenvectors().col(0);
  if (h.rows() > 1) {
    out.e1 = es.eigenvalues()(1);
    out.v1 = es.eigenvectors().col(1);
  } else {
    out.e1 = kInf;
  }
  return out;
}

}  // namespace

LowestPair lowest_one(const LinearMap& apply, Eigen::Index dim, const RunConfig& cfg,
                      const Eigen::VectorXd* warm_start) {
  if (dim < 1) throw std::invalid_argument("empty operator");
  if (dim == 1) {
    Eigen::VectorXd e = Eigen::VectorXd::Ones(1);
    Eigen::VectorXd y(1);
    apply(e, y);
    return {y[0], e, 1};
  }
  Eigen::VectorXd start = warm_start && warm_start->size() == dim ? *warm_start
                                                                  : seeded_start(dim, cfg.seed);
  auto run = lanczos_lowest(apply, dim, cfg, start, {});
  if (!run.converged)
    throw ConvergenceError("eigensolver failed to converge within " +
                               std::to_string(cfg.max_eig_iterations) +
                               " matrix applications (residual " + std::to_string(run.residual) +
                               ")",
                           run.residual);
  return {run.theta, run.vector, run.matvecs};
}

LowestPairs lowest_two(const LinearMap& apply, Eigen::Index dim, const RunConfig& cfg,
                       const Eigen::VectorXd* warm_start) {
  if (dim < 1) throw std::invalid_argument("empty operator");
  LowestPairs out;
  if (dim == 1) {
    Eigen::VectorXd e = Eigen::VectorXd::Ones(1);
    Eigen::VectorXd y(1);
    apply(e, y);
    out.e0 = y[0];
    out.v0 = e;
    out.e1 = kInf;
    out.matvecs = 1;
    return out;
  }
  auto first = lowest_one(apply, dim, cfg, warm_start);
  out.e0 = first.e0;
  out.v0 = first.v0;
  out.matvecs = first.matvecs;
  auto second = lanczos_lowest(apply, dim, cfg, seeded_start(dim, cfg.seed + 17), {out.v0});
  out.matvecs += second.matvecs;
  if (!second.converged)
    throw ConvergenceError("deflated eigensolver failed to converge (residual " +
                               std::to_string(second.residual) + ")",
                           second.residual);
  out.e1 = second.theta;
  out.v1 = second.vector;
  return out;
}

GroundStateResult ground_state(const SparseOperator& hamiltonian, const RunConfig& cfg) {
  cfg.validate();
  if (!hamiltonian.symmetric) throw std::invalid_argument("ground_state needs a symmetric operator");
  const Eigen::Index dim = hamiltonian.dim();
  GroundStateResult result;
  if (dim <= cfg.dense_threshold) {
    auto pairs = dense_lowest_two(to_dense(hamiltonian));
    result.energy = pairs.e0;
    result.vector = pairs.v0;
    result.gap_to_next = pairs.e1 - pairs.e0;
    result.iterations = 0;
  } else {
    LinearMap apply = [&](const Eigen::VectorXd& x, Eigen::VectorXd& y) {
      y.noalias() = hamiltonian.matrix * x;
    };
    auto pairs = lowest_two(apply, dim, cfg);
    result.energy = pairs.e0;
    result.vector = pairs.v0;
    result.gap_to_next = pairs.e1 - pairs.e0;
    result.iterations = pairs.matvecs;
  }
  result.degenerate = result.gap_to_next < cfg.degeneracy_tol;
  return result;
}

std::pair<GroundStateResult, std::vector<PerSectorMinimum>> ground_state_by_sector(
    const SectorDecomposition& decomposition, const RunConfig& cfg) {
  cfg.validate();
  if (decomposition.sectors.empty()) throw std::invalid_argument("empty decomposition");

  struct SectorSolve {
    double e0;
    Eigen::VectorXd v0;
    double e1;  // within-sector second (dense path only; +inf otherwise)
    bool have_e1;
    int matvecs;
  };
  std::vector<SectorSolve> solves;
  solves.reserve(decomposition.sectors.size());
  int total_matvecs = 0;
  for (const auto& sector : decomposition.sectors) {
    const Eigen::Index dim = sector.block.dim();
    SectorSolve sol{0, {}, kInf, false, 0};
    if (dim <= cfg.dense_threshold) {
      auto pairs = dense_lowest_two(to_dense(sector.block));
      sol = {pairs.e0, pairs.v0, pairs.e1, true, 0};
    } else {
      LinearMap apply = [&](const Eigen::VectorXd& x, Eigen::VectorXd& y) {
        y.noalias() = sector.block.matrix * x;
      };
      auto one = lowest_one(apply, dim, cfg);
      sol = {one.e0, one.v0, kInf, false, one.matvecs};
    }
    total_matvecs += sol.matvecs;
    solves.push_back(std::move(sol));
  }

  // Winner: lowest energy; exact ties resolved toward small |M|, then M >= 0.
  int win = 0;
  for (int i = 1; i < static_cast<int>(solves.size()); ++i) {
    const auto& cur = decomposition.sectors[i].total_m;
    const auto& best = decomposition.sectors[win].total_m;
    if (solves[i].e0 < solves[win].e0 ||
        (solves[i].e0 == solves[win].e0 &&
         (cur.abs() < best.abs() || (cur.abs() == best.abs() && cur.twice() > best.twice()))))
      win = i;
  }

  double second = kInf;
  for (int i = 0; i < static_cast<int>(solves.size()); ++i)
    if (i != win) second = std::min(second, solves[i].e0);
  if (solves[win].have_e1) {
    second = std::min(second, solves[win].e1);
  } else if (decomposition.sectors[win].block.dim() > 1) {
    const auto& block = decomposition.sectors[win].block;
    LinearMap apply = [&](const Eigen::VectorXd& x, Eigen::VectorXd& y) {
      y.noalias() = block.matrix * x;
    };
    auto deflated = lanczos_lowest(apply, block.dim(), cfg, seeded_start(block.dim(), cfg.seed + 17),
                                   {solves[win].v0});
    total_matvecs += deflated.matvecs;
    if (!deflated.converged)
      throw ConvergenceError("deflated sector eigensolver failed to converge", deflated.residual);
    second = std::min(second, deflated.theta);
  }

  GroundStateResult result;
  result.energy = solves[win].e0;
  result.gap_to_next = second - solves[win].e0;
  result.degenerate = result.gap_to_next < cfg.degeneracy_tol;
  result.sector_m = decomposition.sectors[win].total_m;
  result.iterations = total_matvecs;
  result.vector.setZero(total_dimension(decomposition.spec.dims()));
  const auto& indices = decomposition.sectors[win].indices;
  for (int i = 0; i < static_cast<int>(indices.size()); ++i)
    result.vector[indices[i]] = solves[win].v0[i];

  std::vector<PerSectorMinimum> minima;
  minima.reserve(solves.size());
  for (int i = 0; i < static_cast<int>(solves.size()); ++i)
    minima.push_back({decomposition.sectors[i].total_m, solves[i].e0});
  return {std::move(result), std::move(minima)};
}

}  // namespace spinwitness

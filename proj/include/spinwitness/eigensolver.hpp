// Copyright 2026 The spinwitness authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <functional>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "spinwitness/config.hpp"
#include "spinwitness/hamiltonian.hpp"
#include "spinwitness/sparse_operator.hpp"

namespace spinwitness {

struct ConvergenceError : std::runtime_error {
  ConvergenceError(const std::string& what, double residual_value)
      : std::runtime_error(what), residual(residual_value) {}
  double residual;
};

struct GroundStateResult {
  double energy = 0;
  Eigen::VectorXd vector;
  double gap_to_next = 0;  // +inf when the space is one-dimensional
  bool degenerate = false;
  std::optional<HalfInt> sector_m;  // empty: solved on the full space
  int iterations = 0;               // matrix applications (0 for dense path)
};

struct PerSectorMinimum {
  HalfInt m;
  double energy;
};

/// y = A x for a symmetric operator given implicitly.
using LinearMap = std::function<void(const Eigen::VectorXd&, Eigen::VectorXd&)>;

/// Two lowest eigenpairs of a symmetric operator. Dimensions at or below
/// cfg.dense_threshold (or with dense_hint) use a direct solver; larger ones
/// run Lanczos with full reorthogonalization, deterministic seeded start and
/// restarts. Throws ConvergenceError when the matvec budget runs out.
struct LowestPairs {
  double e0 = 0;
  Eigen::VectorXd v0;
  double e1 = 0;  // +inf for dim == 1
  Eigen::VectorXd v1;
  int matvecs = 0;
};

LowestPairs lowest_two(const LinearMap& apply, Eigen::Index dim, const RunConfig& cfg,
                       const Eigen::VectorXd* warm_start = nullptr);

/// Lowest eigenpair only (cheaper: no deflated second pass).
struct LowestPair {
  double e0 = 0;
  Eigen::VectorXd v0;
  int matvecs = 0;
};

LowestPair lowest_one(const LinearMap& apply, Eigen::Index dim, const RunConfig& cfg,
                      const Eigen::VectorXd* warm_start = nullptr);

GroundStateResult ground_state(const SparseOperator& hamiltonian, const RunConfig& cfg = {});

/// Global minimum over all S_z sectors plus the full per-sector energy list
/// (ordered by M ascending). The returned vector lives in the full product
/// basis. The gap merges the winning sector's internal gap with the other
/// sectors' minima.
std::pair<GroundStateResult, std::vector<PerSectorMinimum>> ground_state_by_sector(
    const SectorDecomposition& decomposition, const RunConfig& cfg = {});

}  // namespace spinwitness

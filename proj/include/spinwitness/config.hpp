// Copyright 2026 The spinwitness authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

namespace spinwitness {

/// Shared numerical configuration. Defaults reproduce the published tables;
/// every run is deterministic for a fixed seed.
struct RunConfig {
  // Eigensolver.
  double eig_residual_tol = 1e-9;  // relative: ||Hv - Ev|| <= tol * max(1, |E|)
  double degeneracy_tol = 1e-8;
  int max_eig_iterations = 5000;  // total matrix applications per solve
  int dense_threshold = 2000;     // dimensions above this use Lanczos
  int krylov_dim = 200;

  // Self-consistent field iteration.
  double z_tol = 1e-10;
  int max_sweeps = 500;
  double damping = 0.5;
  // Start values for z_B are start_grid_fractions * (-s).
  std::vector<double> start_grid_fractions = {0.0, 0.25, 0.5, 0.75, 1.0};

  // Sphere-constrained conjugate gradient.
  double cg_grad_tol = 1e-10;
  int cg_max_iterations = 10000;
  int cg_multistarts = 8;

  // Tractability limit for full-chain diagonalization (ground energy,
  // spectral gap, total-spin checks).
  std::int64_t max_full_dimension = 50000;

  std::uint64_t seed = 12345;
  int threads = 0;  // 0 = hardware concurrency

  void validate() const {
    if (eig_residual_tol <= 0 || degeneracy_tol <= 0 || z_tol <= 0 || cg_grad_tol <= 0)
      throw std::invalid_argument("tolerances must be positive");
    if (dense_threshold < 1 || krylov_dim < 2 || max_eig_iterations < 1)
      throw std::invalid_argument("invalid eigensolver limits");
  }
};

}  // namespace spinwitness

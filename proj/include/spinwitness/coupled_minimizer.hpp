// Copyright 2026 The spinwitness authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <Eigen/Dense>
#include <array>

#include "spinwitness/config.hpp"
#include "spinwitness/half_int.hpp"

namespace spinwitness {

/// Two-spin state restricted to one M sector of the coupled basis:
/// coefficients A_S = a_S e^{i alpha_S} over S = |M| ... 2s (ascending).
/// Magnitudes are normalized (sum of squares 1) and non-negative; phases in
/// radians.
struct CoupledAmplitudes {
  HalfInt m;
  std::vector<double> magnitudes;
  std::vector<double> phases;
};

/// <s_{2,z}> in the state (the matrix is tridiagonal in S, built from
/// Clebsch-Gordan coefficients).
double f_m(const CoupledAmplitudes& amps, HalfInt s);

/// <s_2 . s_3> = sum_S a_S^2 [S(S+1) - 2 s(s+1)] / 2.
double g_m(const CoupledAmplitudes& amps, HalfInt s);

/// Matrix <S, M| s_{2,z} |S', M> over S = |M| ... 2s for identical spins.
Eigen::MatrixXd pair_sz_matrix(HalfInt s, HalfInt m);

/// Diagonal of s_2 . s_3 in the same basis.
Eigen::VectorXd pair_bond_diagonal(HalfInt s, HalfInt m);

/// Rayleigh quotient c^T Q c / c^T c and its Euclidean gradient.
double rayleigh(const Eigen::MatrixXd& q, const Eigen::VectorXd& c);
Eigen::VectorXd rayleigh_gradient(const Eigen::MatrixXd& q, const Eigen::VectorXd& c);

/// Minimum of c^T Q c over the unit sphere by projected conjugate gradient
/// with exact great-circle line searches and deterministic multistarts.
struct SphereMinimum {
  double value = 0;
  Eigen::VectorXd argmin;
  int iterations = 0;
  bool converged = false;
};
SphereMinimum minimize_on_sphere(const Eigen::MatrixXd& q, const RunConfig& cfg,
                                 std::uint64_t seed_offset = 0);

/// Minimum of -s f_M + g_M over all M sectors. Phases enter as signed real
/// coefficients (all matrix elements are real); the winner's phase pattern
/// alternates by pi, as a result rather than an input.
struct TripartiteMinimum {
  double energy = 0;
  HalfInt winning_m;
  CoupledAmplitudes amplitudes;
  double e12 = 0;  // -s f at the minimum (bond to the polarized spin)
  double e23 = 0;  // g at the minimum (bond inside the entangled pair)
  bool certified = false;
};
TripartiteMinimum minimize_tripartite(HalfInt s, const RunConfig& cfg = {});

/// Closed forms: s = 1/2 gives -(1+sqrt(5))/4; s = 1 the cubic-root
/// expression in phi = arccos(1/(10 sqrt(10))). Other spins throw.
double closed_form_tripartite(HalfInt s);

/// The s = 1/2 minimizer amplitudes (a0, a1) = sqrt(1/2 +- 1/sqrt(5)).
std::array<double, 2> closed_form_tripartite_amplitudes(HalfInt s);

/// Minimum of g_M(a) + f_M(a) f_M'(b) + g_M'(b) over both unit spheres and
/// all (M, M') sectors: alternating eigensolves polished by joint projected
/// conjugate gradient. At the reported minimum block A carries the
/// alternating phase pattern and block B the constant one, with equal
/// magnitudes.
struct QuadBilinearMinimum {
  double energy = 0;
  HalfInt m_a, m_b;
  CoupledAmplitudes a, b;
  bool certified = false;
};
QuadBilinearMinimum minimize_quad_22(HalfInt s, const RunConfig& cfg = {});

}  // namespace spinwitness

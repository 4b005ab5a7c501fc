// Copyright 2026 The spinwitness authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <vector>

#include "spinwitness/half_int.hpp"
#include "spinwitness/sparse_operator.hpp"

namespace spinwitness {

enum class SpinComponent {
  Z,
  Plus,
  Minus,
  X,
  IY,  // i * s_y: the real antisymmetric partner of s_x
};

/// Magnetic quantum numbers of a spin-s site in matrix order (m descending,
/// so index 0 is m = +s).
std::vector<HalfInt> site_m_values(HalfInt s);

/// (2s+1)-dimensional spin operator. s_z is diagonal with entries m; s_+/s_-
/// carry sqrt(s(s+1) - m(m+-1)) on the first off-diagonal.
SparseOperator spin_matrix(HalfInt s, SpinComponent which);

/// Clebsch-Gordan coefficient <j1 m1; j2 m2 | J M> in the Condon-Shortley
/// convention. Selection-rule failures return 0; structurally invalid
/// quantum numbers (|m| > j, mismatched parity, negative j) throw.
///
/// Evaluated by the Racah sum with exact integer arithmetic (prime-exponent
/// factorials, arbitrary-precision alternating sum), converted to double
/// only at the end. Exact for any j, not just small ones.
double clebsch_gordan(HalfInt j1, HalfInt j2, HalfInt m1, HalfInt m2, HalfInt J, HalfInt M);

/// All coefficients <j1 m1; j2 m2 | J M> for fixed (j1, j2).
class CGTable {
 public:
  CGTable(HalfInt j1, HalfInt j2);

  HalfInt j1() const { return j1_; }
  HalfInt j2() const { return j2_; }
  HalfInt j_min() const { return (j1_ - j2_).abs(); }
  HalfInt j_max() const { return j1_ + j2_; }

  double coefficient(HalfInt m1, HalfInt m2, HalfInt J, HalfInt M) const;

 private:
  HalfInt j1_, j2_;
  int n_j_;
  std::vector<double> coeffs_;  // [m1-index][m2-index][J-index], M = m1 + m2
};

/// Labels (S, M) of the coupled two-spin basis in column order: M descending
/// (outer), S ascending (inner).
struct CoupledState {
  HalfInt S;
  HalfInt M;
};
std::vector<CoupledState> coupled_basis(HalfInt s2, HalfInt s3);

/// Orthogonal matrix whose columns are the coupled states |S, M> expanded in
/// the product basis (site-2 major, m descending). U^T maps product-basis
/// coordinates to coupled-basis coordinates; columns follow coupled_basis().
SparseOperator coupled_transform(HalfInt s2, HalfInt s3);

/// sqrt(s(s+1)/3): magnitude of the two-spin matrix element
/// <S=1, M=0| s_z^(2) |S=0, M=0>. Requires s > 0.
double eta(HalfInt s);

}  // namespace spinwitness

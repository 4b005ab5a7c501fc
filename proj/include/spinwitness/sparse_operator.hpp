// Copyright 2026 The spinwitness authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <Eigen/Dense>
#include <Eigen/SparseCore>
#include <complex>
#include <cstdint>
#include <vector>

namespace spinwitness {

/// Real sparse operator on a tensor-product Hilbert space. `dims` lists the
/// local dimension of every site; the matrix dimension is their product.
/// Site 0 is the most significant tensor factor, and within every site the
/// basis is ordered by decreasing magnetic quantum number.
struct SparseOperator {
  std::vector<int> dims;
  Eigen::SparseMatrix<double> matrix;
  bool symmetric = true;

  Eigen::Index dim() const { return matrix.rows(); }
};

std::int64_t total_dimension(const std::vector<int>& dims);

SparseOperator make_operator(std::vector<int> dims,
                             const std::vector<Eigen::Triplet<double>>& entries,
                             bool symmetric = true);

SparseOperator identity_operator(std::vector<int> dims);

/// Kronecker embedding of a single-site operator, identities elsewhere.
SparseOperator embed(const SparseOperator& site_op, int site, const std::vector<int>& dims);

SparseOperator operator+(const SparseOperator& a, const SparseOperator& b);
SparseOperator operator-(const SparseOperator& a, const SparseOperator& b);
SparseOperator operator*(double scale, const SparseOperator& op);

/// Matrix product a*b; the result is flagged non-symmetric unless told
/// otherwise by the caller.
SparseOperator product(const SparseOperator& a, const SparseOperator& b, bool symmetric = false);

double expectation(const SparseOperator& op, const Eigen::VectorXd& state);
double expectation(const SparseOperator& op, const Eigen::VectorXcd& state);

Eigen::MatrixXd to_dense(const SparseOperator& op);

/// max |A - A^T| over all entries; 0 for an exactly symmetric operator.
double symmetry_error(const SparseOperator& op);

}  // namespace spinwitness

// Copyright 2026 The spinwitness authors
// SPDX-License-Identifier: Apache-2.0

#include "spinwitness/sparse_operator.hpp"

#include <limits>
#include <stdexcept>

namespace spinwitness {

std::int64_t total_dimension(const std::vector<int>& dims) {
  std::int64_t total = 1;
  for (int d : dims) {
    if (d < 1) throw std::invalid_argument("site dimension must be >= 1");
    total *= d;
    if (total > std::numeric_limits<int>::max())
      throw std::invalid_argument("tensor-product dimension exceeds sparse index range");
  }
  return total;
}

SparseOperator make_operator(std::vector<int> dims,
                             const std::vector<Eigen::Triplet<double>>& entries,
                             bool symmetric) {
  const auto n = total_dimension(dims);
  SparseOperator op;
  op.dims = std::move(dims);
  op.matrix.resize(n, n);
  op.matrix.setFromTriplets(entries.begin(), entries.end());
  op.matrix.makeCompressed();
  op.symmetric = symmetric;
  return op;
}

SparseOperator identity_operator(std::vector<int> dims) {
  const auto n = total_dimension(dims);
  SparseOperator op;
  op.dims = std::move(dims);
  op.matrix.resize(n, n);
  op.matrix.setIdentity();
  op.symmetric = true;
  return op;
}

SparseOperator embed(const SparseOperator& site_op, int site, const std::vector<int>& dims) {
  if (site < 0 || site >= static_cast<int>(dims.size()))
    throw std::invalid_argument("embed: site index out of range");
  if (site_op.dim() != dims[site])
    throw std::invalid_argument("embed: operator dimension does not match dims[site]");
  const auto n = total_dimension(dims);
  std::int64_t left = 1, right = 1;
  for (int i = 0; i < site; ++i) left *= dims[i];
  for (int i = site + 1; i < static_cast<int>(dims.size()); ++i) right *= dims[i];
  const int d = dims[site];

  std::vector<Eigen::Triplet<double>> entries;
  entries.reserve(static_cast<std::size_t>(site_op.matrix.nonZeros()) * left * right);
  for (int col = 0; col < site_op.matrix.outerSize(); ++col) {
    for (Eigen::SparseMatrix<double>::InnerIterator it(site_op.matrix, col); it; ++it) {
      for (std::int64_t l = 0; l < left; ++l) {
        const std::int64_t row_base = (l * d + it.row()) * right;
        const std::int64_t col_base = (l * d + it.col()) * right;
        for (std::int64_t r = 0; r < right; ++r)
          entries.emplace_back(static_cast<int>(row_base + r), static_cast<int>(col_base + r),
                               it.value());
      }
    }
  }
  SparseOperator op;
  op.dims = dims;
  op.matrix.resize(n, n);
  op.matrix.setFromTriplets(entries.begin(), entries.end());
  op.matrix.makeCompressed();
  op.symmetric = site_op.symmetric;
  return op;
}

namespace {
void check_same_space(const SparseOperator& a, const SparseOperator& b) {
  if (a.dims != b.dims) throw std::invalid_argument("operators act on different spaces");
}
}  // namespace

SparseOperator operator+(const SparseOperator& a, const SparseOperator& b) {
  check_same_space(a, b);
  SparseOperator out;
  out.dims = a.dims;
  out.matrix = a.matrix + b.matrix;
  out.matrix.makeCompressed();
  out.symmetric = a.symmetric && b.symmetric;
  return out;
}

SparseOperator operator-(const SparseOperator& a, const SparseOperator& b) {
  check_same_space(a, b);
  SparseOperator out;
  out.dims = a.dims;
  out.matrix = a.matrix - b.matrix;
  out.matrix.makeCompressed();
  out.symmetric = a.symmetric && b.symmetric;
  return out;
}

SparseOperator operator*(double scale, const SparseOperator& op) {
  SparseOperator out = op;
  out.matrix *= scale;
  return out;
}

SparseOperator product(const SparseOperator& a, const SparseOperator& b, bool symmetric) {
  check_same_space(a, b);
  SparseOperator out;
  out.dims = a.dims;
  out.matrix = a.matrix * b.matrix;
  out.matrix.makeCompressed();
  out.symmetric = symmetric;
  return out;
}

double expectation(const SparseOperator& op, const Eigen::VectorXd& state) {
  return state.dot(op.matrix * state);
}

double expectation(const SparseOperator& op, const Eigen::VectorXcd& state) {
  return state.dot(op.matrix.cast<std::complex<double>>() * state).real();
}

Eigen::MatrixXd to_dense(const SparseOperator& op) { return Eigen::MatrixXd(op.matrix); }

double symmetry_error(const SparseOperator& op) {
  Eigen::SparseMatrix<double> diff = Eigen::SparseMatrix<double>(op.matrix.transpose()) - op.matrix;
  double err = 0;
  for (int col = 0; col < diff.outerSize(); ++col)
    for (Eigen::SparseMatrix<double>::InnerIterator it(diff, col); it; ++it)
      err = std::max(err, std::abs(it.value()));
  return err;
}

}  // namespace spinwitness

// Copyright gldln developers. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#include "gldln/linalg.hpp"

#include <Eigen/SparseCore>
#include <Eigen/SparseLU>
#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace gldln {

namespace {

using EigenSparse = Eigen::SparseMatrix<Complex, Eigen::ColMajor, int>;

double residual_norm(const ComplexCsr& a, const DofVector& x,
                     const DofVector& b) {
  const DofVector ax = matvec(a, x);
  double s = 0.0;
  for (std::size_t i = 0; i < b.size(); ++i) s += std::norm(ax[i] - b[i]);
  return std::sqrt(s);
}

}  // namespace

ComplexCsr csr_from_triplets(int n_rows, int n_cols,
                             std::span<const Triplet> triplets) {
  for (const Triplet& t : triplets)
    if (t.row < 0 || t.row >= n_rows || t.col < 0 || t.col >= n_cols)
      throw std::invalid_argument("csr_from_triplets: index out of range");

  std::vector<int> order(triplets.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    const Triplet& ta = triplets[a];
    const Triplet& tb = triplets[b];
    return ta.row != tb.row ? ta.row < tb.row : ta.col < tb.col;
  });

  ComplexCsr out;
  out.n_rows = n_rows;
  out.n_cols = n_cols;
  out.row_offsets.assign(n_rows + 1, 0);
  for (std::size_t i = 0; i < order.size();) {
    const Triplet& head = triplets[order[i]];
    Complex sum = 0.0;
    std::size_t j = i;
    for (; j < order.size(); ++j) {
      const Triplet& t = triplets[order[j]];
      if (t.row != head.row || t.col != head.col) break;
      sum += t.value;
    }
    out.col_indices.push_back(head.col);
    out.values.push_back(sum);
    ++out.row_offsets[head.row + 1];
    i = j;
  }
  for (int r = 0; r < n_rows; ++r) out.row_offsets[r + 1] += out.row_offsets[r];
  return out;
}

DofVector matvec(const ComplexCsr& a, const DofVector& x) {
  if (static_cast<int>(x.size()) != a.n_cols)
    throw DimensionMismatch("matvec: dimension mismatch");
  DofVector y(a.n_rows, Complex(0.0));
  for (int r = 0; r < a.n_rows; ++r) {
    Complex s = 0.0;
    for (int idx = a.row_offsets[r]; idx < a.row_offsets[r + 1]; ++idx)
      s += a.values[idx] * x[a.col_indices[idx]];
    y[r] = s;
  }
  return y;
}

struct CsrSolver::Impl {
  EigenSparse matrix;
  std::vector<int> csr_to_csc;  // value permutation, fixed pattern
  Eigen::SparseLU<EigenSparse> lu;
  bool analyzed = false;
};

CsrSolver::CsrSolver(const ComplexCsr& pattern) : impl_(new Impl) {
  if (pattern.n_rows != pattern.n_cols)
    throw std::invalid_argument("CsrSolver: matrix must be square");

  // Materialize the pattern in column-major order and remember where each
  // CSR entry lands, so factorize() is a pure value update.
  std::vector<Eigen::Triplet<Complex>> trips;
  trips.reserve(pattern.nnz());
  for (int r = 0; r < pattern.n_rows; ++r)
    for (int idx = pattern.row_offsets[r]; idx < pattern.row_offsets[r + 1]; ++idx)
      trips.emplace_back(r, pattern.col_indices[idx], Complex(0.0));
  impl_->matrix.resize(pattern.n_rows, pattern.n_cols);
  impl_->matrix.setFromTriplets(trips.begin(), trips.end());
  impl_->matrix.makeCompressed();

  std::vector<int> order(pattern.nnz());
  std::iota(order.begin(), order.end(), 0);
  std::vector<int> rows(pattern.nnz());
  for (int r = 0; r < pattern.n_rows; ++r)
    for (int idx = pattern.row_offsets[r]; idx < pattern.row_offsets[r + 1]; ++idx)
      rows[idx] = r;
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    const int ca = pattern.col_indices[a], cb = pattern.col_indices[b];
    return ca != cb ? ca < cb : rows[a] < rows[b];
  });
  impl_->csr_to_csc = order;
}

CsrSolver::~CsrSolver() = default;
CsrSolver::CsrSolver(CsrSolver&&) noexcept = default;
CsrSolver& CsrSolver::operator=(CsrSolver&&) noexcept = default;

void CsrSolver::factorize(std::span<const Complex> values) {
  if (static_cast<int>(values.size()) != impl_->matrix.nonZeros())
    throw DimensionMismatch("CsrSolver::factorize: value count mismatch");
  Complex* dst = impl_->matrix.valuePtr();
  for (std::size_t i = 0; i < values.size(); ++i)
    dst[i] = values[impl_->csr_to_csc[i]];

  if (!impl_->analyzed) {
    impl_->lu.analyzePattern(impl_->matrix);
    impl_->analyzed = true;
  }
  impl_->lu.factorize(impl_->matrix);
  if (impl_->lu.info() != Eigen::Success)
    throw SingularMatrix("CsrSolver: factorization failed");
}

DofVector CsrSolver::solve(const DofVector& b) const {
  if (!impl_->analyzed)
    throw std::logic_error("CsrSolver::solve before factorize");
  Eigen::Map<const Eigen::VectorXcd> rhs(b.data(), b.size());
  Eigen::VectorXcd x = impl_->lu.solve(rhs);
  return DofVector(x.data(), x.data() + x.size());
}

DofVector solve(const ComplexCsr& a, const DofVector& b, double tol) {
  if (a.n_rows != a.n_cols)
    throw std::invalid_argument("solve: matrix must be square");
  if (static_cast<int>(b.size()) != a.n_rows)
    throw DimensionMismatch("solve: right-hand side length mismatch");
  if (!(tol > 0.0)) throw std::invalid_argument("solve: tol must be positive");

  double b_norm = l2_norm(b);
  if (b_norm == 0.0) return DofVector(b.size(), Complex(0.0));

  CsrSolver solver(a);
  solver.factorize(a.values);
  DofVector x = solver.solve(b);

  if (!all_finite(x))
    throw SolverFailure("solve: non-finite entries in solution",
                        std::numeric_limits<double>::infinity());
  const double rel = residual_norm(a, x, b) / b_norm;
  if (rel > tol)
    throw SolverFailure("solve: residual above tolerance", rel);
  return x;
}

double l2_norm(const DofVector& v) {
  double s = 0.0;
  for (const Complex& c : v) s += std::norm(c);
  return std::sqrt(s);
}

Complex m_inner_product(const ComplexCsr& m, const DofVector& x,
                        const DofVector& y) {
  const DofVector mx = matvec(m, x);
  Complex s = 0.0;
  for (std::size_t i = 0; i < y.size(); ++i) s += std::conj(y[i]) * mx[i];
  return s;
}

double m_norm(const ComplexCsr& m, const DofVector& x) {
  const double s = std::real(m_inner_product(m, x, x));
  return std::sqrt(std::max(0.0, s));
}

bool all_finite(const DofVector& v) {
  for (const Complex& c : v)
    if (!std::isfinite(c.real()) || !std::isfinite(c.imag())) return false;
  return true;
}

}  // namespace gldln

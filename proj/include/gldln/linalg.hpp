// Copyright gldln developers. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#ifndef GLDLN_LINALG_HPP
#define GLDLN_LINALG_HPP

#include <memory>
#include <span>
#include <vector>

#include "gldln/types.hpp"

namespace gldln {

/// Complex sparse matrix in compressed-row form. Column indices are strictly
/// increasing within each row. Immutable by convention after construction.
struct ComplexCsr {
  int n_rows = 0;
  int n_cols = 0;
  std::vector<int> row_offsets;   // size n_rows + 1
  std::vector<int> col_indices;   // size nnz
  std::vector<Complex> values;    // size nnz

  int nnz() const { return static_cast<int>(col_indices.size()); }
};

struct Triplet {
  int row = 0;
  int col = 0;
  Complex value{0.0, 0.0};
};

/// Builds a CSR matrix from (row, col, value) triplets; duplicates are summed.
ComplexCsr csr_from_triplets(int n_rows, int n_cols,
                             std::span<const Triplet> triplets);

/// y = A x with the per-row accumulation done in index order.
DofVector matvec(const ComplexCsr& a, const DofVector& x);

/// Direct sparse solve of A x = b for general (non-Hermitian) complex
/// systems. Postcondition: relative residual ||Ax-b||/||b|| <= tol, checked;
/// b = 0 returns x = 0. Deterministic for fixed inputs.
DofVector solve(const ComplexCsr& a, const DofVector& b, double tol);

/// Repeated factorizations on a fixed sparsity pattern: the symbolic
/// analysis is done once, each factorize() call only updates values.
class CsrSolver {
 public:
  explicit CsrSolver(const ComplexCsr& pattern);
  ~CsrSolver();
  CsrSolver(CsrSolver&&) noexcept;
  CsrSolver& operator=(CsrSolver&&) noexcept;

  /// `a` must have the same sparsity pattern as the one given at construction.
  void factorize(std::span<const Complex> values);
  DofVector solve(const DofVector& b) const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

// Small vector helpers used throughout the scheme.
double l2_norm(const DofVector& v);
Complex m_inner_product(const ComplexCsr& m, const DofVector& x,
                        const DofVector& y);  // (x, y)_M = y^H M x
double m_norm(const ComplexCsr& m, const DofVector& x);
bool all_finite(const DofVector& v);

}  // namespace gldln

#endif  // GLDLN_LINALG_HPP

// Copyright gldln developers. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#ifndef GLDLN_ASSEMBLY_HPP
#define GLDLN_ASSEMBLY_HPP

#include <functional>
#include <span>

#include "gldln/fespace.hpp"
#include "gldln/linalg.hpp"
#include "gldln/quadrature.hpp"

namespace gldln {

/// Weight callable sampled at quadrature points of a cell's reference simplex.
using WeightFn = std::function<double(int cell, const Vec& ref_point)>;

/// FE adjacency pattern shared by the mass, stiffness and weighted-mass
/// matrices, with a per-cell scatter map into the nnz array.
struct FePattern {
  ComplexCsr csr;               // values zeroed
  std::vector<int> cell_slots;  // [cell*nl*nl + a*nl + b] -> nnz index
};

FePattern build_pattern(const FeSpace& space);

/// M_ij = int phi_i phi_j. Symmetric, real entries.
ComplexCsr assemble_mass(const FeSpace& space);

/// A_ij = int grad phi_i . grad phi_j. Symmetric positive semidefinite.
ComplexCsr assemble_stiffness(const FeSpace& space);

/// W_ij = int w(x) phi_i phi_j with a real scalar weight sampled at the
/// quadrature points of the nonlinear-term rule (degree 2k+2).
ComplexCsr assemble_weighted_mass(const FeSpace& space, const WeightFn& weight);

/// b_i = int f(x, t) phi_i dx with the source rule (degree 2k+2).
DofVector assemble_load(const FeSpace& space,
                        const std::function<Complex(const Vec&, double)>& source,
                        double t);

// ---- value-filling core (fixed pattern, used by the time stepper) ----------

/// Writes mass values (quadrature degree 2k) into `out` (pattern nnz order).
void fill_mass_values(const FeSpace& space, const FePattern& pattern,
                      std::span<Complex> out);

/// Writes stiffness values (quadrature degree 2k) into `out`.
void fill_stiffness_values(const FeSpace& space, const FePattern& pattern,
                           std::span<Complex> out);

/// Writes int w(x) phi_i phi_j values for a complex weight evaluated per
/// (cell, quadrature point index); the basis table must belong to `rule`.
template <class ComplexWeight>  // Complex(int cell, int q)
void fill_weighted_mass_values(const FeSpace& space, const FePattern& pattern,
                               const QuadRule& rule, const BasisTable& table,
                               ComplexWeight&& weight, std::span<Complex> out,
                               std::span<const double> cell_dets) {
  const int nl = table.n_local;
  std::fill(out.begin(), out.end(), Complex(0.0));
  for (int c = 0; c < space.mesh.n_cells(); ++c) {
    const double det = cell_dets[c];
    const int* slots = &pattern.cell_slots[static_cast<std::size_t>(c) * nl * nl];
    for (int q = 0; q < table.n_points; ++q) {
      const Complex w = weight(c, q) * (rule.weights[q] * det);
      const double* phi = &table.values[q * nl];
      for (int a = 0; a < nl; ++a) {
        const Complex wa = w * phi[a];
        for (int b = 0; b < nl; ++b) out[slots[a * nl + b]] += wa * phi[b];
      }
    }
  }
}

/// Per-cell |det J| for every cell of the mesh.
std::vector<double> compute_cell_dets(const FeSpace& space);

// ---- homogeneous Dirichlet reduction ---------------------------------------

/// Interior-row/interior-column submatrix (boundary DOFs eliminated).
ComplexCsr restrict_to_interior(const ComplexCsr& a, const FeSpace& space);

/// Map from full-pattern nnz indices to reduced-pattern nnz indices
/// (-1 where the entry is dropped), aligned with restrict_to_interior.
std::vector<int> interior_nnz_map(const ComplexCsr& a, const FeSpace& space);

DofVector restrict_vector(const DofVector& full, const FeSpace& space);
DofVector expand_with_zero_boundary(const DofVector& interior,
                                    const FeSpace& space);

}  // namespace gldln

#endif  // GLDLN_ASSEMBLY_HPP

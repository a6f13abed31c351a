// Copyright gldln developers. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#ifndef GLDLN_FESPACE_HPP
#define GLDLN_FESPACE_HPP

#include <utility>
#include <vector>

#include "gldln/mesh.hpp"
#include "gldln/quadrature.hpp"
#include "gldln/types.hpp"

namespace gldln {

/// Number of Lagrange nodes per cell for degree k in dimension dim.
int local_dof_count(int k, int dim);

/// Reference node coordinates for the equispaced Lagrange element,
/// enumerated in a fixed deterministic order.
std::vector<Vec> reference_nodes(int k, int dim);

/// Shape function values and reference gradients at a point of the closed
/// reference simplex. Output spans must hold local_dof_count(k, dim) entries.
/// Supported: k in {1,2,3} for dim 2, k in {1,2} for dim 3.
void reference_basis(int k, int dim, const Vec& point, double* values,
                     Vec* gradients);

/// Basis values/gradients tabulated at the points of a quadrature rule
/// (affine cells, so the table is shared by every cell).
struct BasisTable {
  int n_local = 0;
  int n_points = 0;
  std::vector<double> values;  // [q * n_local + i]
  std::vector<Vec> ref_grads;  // [q * n_local + i]

  double value(int q, int i) const { return values[q * n_local + i]; }
  const Vec& grad(int q, int i) const { return ref_grads[q * n_local + i]; }
};

BasisTable tabulate_basis(int k, int dim, const QuadRule& rule);

/// Lagrange P_k space over a structured mesh with a deterministic
/// (coordinate-lexicographic) global numbering and homogeneous-Dirichlet
/// boundary bookkeeping. Immutable after construction.
struct FeSpace {
  Mesh mesh;
  int degree = 0;
  std::vector<Vec> dof_coords;
  std::vector<int> cell_dofs;       // flat, stride n_local
  std::vector<bool> dof_on_boundary;
  std::vector<int> boundary_dofs;   // ascending
  std::vector<int> interior_dofs;   // ascending

  int n_dofs() const { return static_cast<int>(dof_coords.size()); }
  int n_local() const { return local_dof_count(degree, mesh.dim); }
  int cell_dof(int cell, int local) const {
    return cell_dofs[static_cast<std::size_t>(cell) * n_local() + local];
  }
};

FeSpace build_space(const Mesh& mesh, int k);

/// Value and physical gradient of the FE function with the given
/// coefficients at a reference point of a cell.
std::pair<Complex, CVec> eval_fe_function(const FeSpace& space,
                                          const DofVector& coeffs, int cell,
                                          const Vec& ref_point);

/// Nodal interpolant: target evaluated at the Lagrange nodes.
DofVector interpolate(const FeSpace& space,
                      const std::function<Complex(const Vec&)>& target);

}  // namespace gldln

#endif  // GLDLN_FESPACE_HPP

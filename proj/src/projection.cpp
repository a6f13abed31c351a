// Copyright gldln developers. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#include "gldln/projection.hpp"

#include <cmath>
#include <stdexcept>

namespace gldln {

namespace {

// RHS with gradient integrand: b_i = int grad(v) . grad(phi_i).
DofVector gradient_load(const FeSpace& space, const ScalarField& target) {
  const int k = space.degree;
  const int dim = space.mesh.dim;
  const QuadRule rule = quadrature_rule(dim, 2 * k + 2);
  const BasisTable table = tabulate_basis(k, dim, rule);
  const int nl = table.n_local;

  DofVector b(space.n_dofs(), Complex(0.0));
  for (int c = 0; c < space.mesh.n_cells(); ++c) {
    const CellGeometry geom = cell_geometry(space.mesh, c);
    for (int q = 0; q < table.n_points; ++q) {
      const Vec x = map_to_physical(geom, rule.points[q]);
      const CVec gv = target.gradient(x);
      const double w = rule.weights[q] * geom.det;
      for (int a = 0; a < nl; ++a) {
        const Vec& rg = table.grad(q, a);
        Vec g{0.0, 0.0, 0.0};
        for (int cc = 0; cc < dim; ++cc)
          for (int l = 0; l < dim; ++l) g[cc] += geom.jacobian_inv[l][cc] * rg[l];
        Complex dot = 0.0;
        for (int cc = 0; cc < dim; ++cc) dot += gv[cc] * g[cc];
        b[space.cell_dof(c, a)] += w * dot;
      }
    }
  }
  return b;
}

DofVector value_load(const FeSpace& space, const ScalarField& target) {
  return assemble_load(
      space, [&](const Vec& x, double) { return target.value(x); }, 0.0);
}

}  // namespace

DofVector ritz_project(const FeSpace& space, const ComplexCsr& /*mass*/,
                       const ComplexCsr& stiffness, const ScalarField& target,
                       double tol) {
  const ComplexCsr a_int = restrict_to_interior(stiffness, space);
  const DofVector b = restrict_vector(gradient_load(space, target), space);
  const DofVector x = solve(a_int, b, tol);
  return expand_with_zero_boundary(x, space);
}

DofVector l2_project(const FeSpace& space, const ComplexCsr& mass,
                     const ScalarField& target, double tol) {
  const DofVector b = value_load(space, target);
  return solve(mass, b, tol);
}

DofVector discrete_laplacian(const FeSpace& space, const ComplexCsr& mass,
                             const ComplexCsr& stiffness, const DofVector& u_h,
                             double tol) {
  if (static_cast<int>(u_h.size()) != space.n_dofs())
    throw DimensionMismatch("discrete_laplacian: coefficient length mismatch");
  for (int b : space.boundary_dofs)
    if (u_h[b] != Complex(0.0))
      throw std::invalid_argument(
          "discrete_laplacian: nonzero boundary entries");

  DofVector rhs = matvec(stiffness, u_h);
  for (Complex& v : rhs) v = -v;
  const ComplexCsr m_int = restrict_to_interior(mass, space);
  const DofVector w = solve(m_int, restrict_vector(rhs, space), tol);
  return expand_with_zero_boundary(w, space);
}

}  // namespace gldln

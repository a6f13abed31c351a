// Copyright gldln developers. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#include "gldln/fespace.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace gldln {

namespace {

void check_supported(int k, int dim) {
  const bool ok = (dim == 2 && k >= 1 && k <= 3) || (dim == 3 && k >= 1 && k <= 2);
  if (!ok)
    throw UnsupportedDegree("lagrange element: unsupported (degree, dim)");
}

// Integer barycentric tuples (m1, .., m_dim) with sum <= k; m0 = k - sum.
std::vector<std::array<int, 3>> node_multi_indices(int k, int dim) {
  std::vector<std::array<int, 3>> out;
  if (dim == 2) {
    for (int m2 = 0; m2 <= k; ++m2)
      for (int m1 = 0; m1 + m2 <= k; ++m1) out.push_back({m1, m2, 0});
  } else {
    for (int m3 = 0; m3 <= k; ++m3)
      for (int m2 = 0; m2 + m3 <= k; ++m2)
        for (int m1 = 0; m1 + m2 + m3 <= k; ++m1) out.push_back({m1, m2, m3});
  }
  return out;
}

// One-dimensional factor of the equispaced simplex Lagrange basis:
// P_c(t) = prod_{r<c} (k t - r) / (c - r), with value and derivative.
void lagrange_factor(int k, int c, double t, double& value, double& deriv) {
  value = 1.0;
  deriv = 0.0;
  for (int r = 0; r < c; ++r) {
    const double term = (k * t - r) / double(c - r);
    deriv = deriv * term + value * double(k) / double(c - r);
    value *= term;
  }
}

}  // namespace

int local_dof_count(int k, int dim) {
  check_supported(k, dim);
  return dim == 2 ? (k + 1) * (k + 2) / 2 : (k + 1) * (k + 2) * (k + 3) / 6;
}

std::vector<Vec> reference_nodes(int k, int dim) {
  check_supported(k, dim);
  std::vector<Vec> nodes;
  for (const auto& m : node_multi_indices(k, dim))
    nodes.push_back({double(m[0]) / k, double(m[1]) / k, double(m[2]) / k});
  return nodes;
}

void reference_basis(int k, int dim, const Vec& point, double* values,
                     Vec* gradients) {
  check_supported(k, dim);

  double lambda[4];
  lambda[0] = 1.0;
  for (int c = 0; c < dim; ++c) {
    lambda[c + 1] = point[c];
    lambda[0] -= point[c];
  }
  const double eps = 1e-12;
  for (int l = 0; l <= dim; ++l)
    if (lambda[l] < -eps || lambda[l] > 1.0 + eps)
      throw std::invalid_argument("reference_basis: point outside simplex");

  const auto multi = node_multi_indices(k, dim);
  for (std::size_t node = 0; node < multi.size(); ++node) {
    int bary[4];
    bary[0] = k;
    for (int c = 0; c < dim; ++c) {
      bary[c + 1] = multi[node][c];
      bary[0] -= multi[node][c];
    }

    double factor[4], dfactor[4];
    for (int l = 0; l <= dim; ++l)
      lagrange_factor(k, bary[l], lambda[l], factor[l], dfactor[l]);

    double value = 1.0;
    for (int l = 0; l <= dim; ++l) value *= factor[l];
    values[node] = value;

    // dN/dlambda_l, then chain rule with dlambda_0/dx_c = -1,
    // dlambda_{c+1}/dx_c = 1.
    double dN[4];
    for (int l = 0; l <= dim; ++l) {
      dN[l] = dfactor[l];
      for (int m = 0; m <= dim; ++m)
        if (m != l) dN[l] *= factor[m];
    }
    Vec g{0.0, 0.0, 0.0};
    for (int c = 0; c < dim; ++c) g[c] = dN[c + 1] - dN[0];
    gradients[node] = g;
  }
}

BasisTable tabulate_basis(int k, int dim, const QuadRule& rule) {
  BasisTable table;
  table.n_local = local_dof_count(k, dim);
  table.n_points = rule.size();
  table.values.resize(static_cast<std::size_t>(table.n_local) * table.n_points);
  table.ref_grads.resize(table.values.size());
  for (int q = 0; q < table.n_points; ++q)
    reference_basis(k, dim, rule.points[q], &table.values[q * table.n_local],
                    &table.ref_grads[q * table.n_local]);
  return table;
}

FeSpace build_space(const Mesh& mesh, int k) {
  check_supported(k, mesh.dim);

  FeSpace space;
  space.mesh = mesh;
  space.degree = k;

  const int dim = mesh.dim;
  const int n_local = local_dof_count(k, dim);
  const auto multi = node_multi_indices(k, dim);
  const int kn = k * mesh.n;

  // Global Lagrange nodes live on the lattice {0,...,kn}^dim (units of
  // 1/(k n)); integer keys make the dedup across cells exact.
  std::vector<std::array<int, 3>> keys;
  keys.reserve(static_cast<std::size_t>(mesh.n_cells()) * n_local);
  for (int c = 0; c < mesh.n_cells(); ++c) {
    for (int node = 0; node < n_local; ++node) {
      int bary0 = k;
      for (int d = 0; d < dim; ++d) bary0 -= multi[node][d];
      std::array<int, 3> key{0, 0, 0};
      const auto& lat0 = mesh.vertex_lattice[mesh.cell_vertex(c, 0)];
      for (int d = 0; d < 3; ++d) key[d] += bary0 * lat0[d];
      for (int l = 1; l <= dim; ++l) {
        const auto& lat = mesh.vertex_lattice[mesh.cell_vertex(c, l)];
        for (int d = 0; d < 3; ++d) key[d] += multi[node][l - 1] * lat[d];
      }
      keys.push_back(key);
    }
  }

  std::vector<std::array<int, 3>> unique_keys = keys;
  std::sort(unique_keys.begin(), unique_keys.end());
  unique_keys.erase(std::unique(unique_keys.begin(), unique_keys.end()),
                    unique_keys.end());

  const int n_dofs = static_cast<int>(unique_keys.size());
  space.dof_coords.resize(n_dofs);
  space.dof_on_boundary.assign(n_dofs, false);
  for (int i = 0; i < n_dofs; ++i) {
    const auto& key = unique_keys[i];
    space.dof_coords[i] = {double(key[0]) / kn, double(key[1]) / kn,
                           dim == 3 ? double(key[2]) / kn : 0.0};
    bool on_boundary = false;
    for (int d = 0; d < dim; ++d)
      on_boundary = on_boundary || key[d] == 0 || key[d] == kn;
    space.dof_on_boundary[i] = on_boundary;
  }

  space.cell_dofs.resize(keys.size());
  for (std::size_t i = 0; i < keys.size(); ++i) {
    const auto it =
        std::lower_bound(unique_keys.begin(), unique_keys.end(), keys[i]);
    space.cell_dofs[i] = static_cast<int>(it - unique_keys.begin());
  }

  for (int i = 0; i < n_dofs; ++i) {
    if (space.dof_on_boundary[i])
      space.boundary_dofs.push_back(i);
    else
      space.interior_dofs.push_back(i);
  }
  return space;
}

std::pair<Complex, CVec> eval_fe_function(const FeSpace& space,
                                          const DofVector& coeffs, int cell,
                                          const Vec& ref_point) {
  if (static_cast<int>(coeffs.size()) != space.n_dofs())
    throw DimensionMismatch("eval_fe_function: coefficient length mismatch");

  const int n_local = space.n_local();
  double values[20];
  Vec grads[20];
  reference_basis(space.degree, space.mesh.dim, ref_point, values, grads);

  Complex value = 0.0;
  CVec ref_grad{0.0, 0.0, 0.0};
  for (int i = 0; i < n_local; ++i) {
    const Complex c = coeffs[space.cell_dof(cell, i)];
    value += c * values[i];
    for (int d = 0; d < 3; ++d) ref_grad[d] += c * grads[i][d];
  }

  const CellGeometry geom = cell_geometry(space.mesh, cell);
  CVec grad{0.0, 0.0, 0.0};
  for (int c = 0; c < space.mesh.dim; ++c)
    for (int l = 0; l < space.mesh.dim; ++l)
      grad[c] += geom.jacobian_inv[l][c] * ref_grad[l];
  return {value, grad};
}

DofVector interpolate(const FeSpace& space,
                      const std::function<Complex(const Vec&)>& target) {
  DofVector coeffs(space.n_dofs());
  for (int i = 0; i < space.n_dofs(); ++i) coeffs[i] = target(space.dof_coords[i]);
  return coeffs;
}

}  // namespace gldln

// Copyright gldln developers. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#include "gldln/assembly.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace gldln {

namespace {

// Local matrices are accumulated symmetrically: the (a,b) and (b,a) entries
// receive the identical product, so the assembled matrix is exactly symmetric.
void scatter_local(const FePattern& pattern, int cell, int nl,
                   const double* local, std::span<Complex> out) {
  const int* slots = &pattern.cell_slots[static_cast<std::size_t>(cell) * nl * nl];
  for (int i = 0; i < nl * nl; ++i) out[slots[i]] += local[i];
}

}  // namespace

FePattern build_pattern(const FeSpace& space) {
  const int nl = space.n_local();
  const int n_cells = space.mesh.n_cells();
  const int n = space.n_dofs();

  std::vector<std::pair<int, int>> entries;  // (row, col)
  entries.reserve(static_cast<std::size_t>(n_cells) * nl * nl);
  for (int c = 0; c < n_cells; ++c)
    for (int a = 0; a < nl; ++a)
      for (int b = 0; b < nl; ++b)
        entries.emplace_back(space.cell_dof(c, a), space.cell_dof(c, b));
  std::sort(entries.begin(), entries.end());
  entries.erase(std::unique(entries.begin(), entries.end()), entries.end());

  FePattern pattern;
  pattern.csr.n_rows = n;
  pattern.csr.n_cols = n;
  pattern.csr.row_offsets.assign(n + 1, 0);
  pattern.csr.col_indices.reserve(entries.size());
  for (const auto& [r, col] : entries) {
    pattern.csr.col_indices.push_back(col);
    ++pattern.csr.row_offsets[r + 1];
  }
  for (int r = 0; r < n; ++r)
    pattern.csr.row_offsets[r + 1] += pattern.csr.row_offsets[r];
  pattern.csr.values.assign(entries.size(), Complex(0.0));

  auto slot_of = [&](int r, int col) {
    const auto begin = pattern.csr.col_indices.begin() + pattern.csr.row_offsets[r];
    const auto end = pattern.csr.col_indices.begin() + pattern.csr.row_offsets[r + 1];
    return static_cast<int>(std::lower_bound(begin, end, col) -
                            pattern.csr.col_indices.begin());
  };
  pattern.cell_slots.resize(static_cast<std::size_t>(n_cells) * nl * nl);
  for (int c = 0; c < n_cells; ++c)
    for (int a = 0; a < nl; ++a)
      for (int b = 0; b < nl; ++b)
        pattern.cell_slots[(static_cast<std::size_t>(c) * nl + a) * nl + b] =
            slot_of(space.cell_dof(c, a), space.cell_dof(c, b));
  return pattern;
}

std::vector<double> compute_cell_dets(const FeSpace& space) {
  std::vector<double> dets(space.mesh.n_cells());
  for (int c = 0; c < space.mesh.n_cells(); ++c)
    dets[c] = cell_geometry(space.mesh, c).det;
  return dets;
}

void fill_mass_values(const FeSpace& space, const FePattern& pattern,
                      std::span<Complex> out) {
  const int k = space.degree;
  const int dim = space.mesh.dim;
  const QuadRule rule = quadrature_rule(dim, 2 * k);
  const BasisTable table = tabulate_basis(k, dim, rule);
  const int nl = table.n_local;

  std::fill(out.begin(), out.end(), Complex(0.0));
  std::vector<double> local(nl * nl);
  for (int c = 0; c < space.mesh.n_cells(); ++c) {
    const double det = cell_geometry(space.mesh, c).det;
    std::fill(local.begin(), local.end(), 0.0);
    for (int q = 0; q < table.n_points; ++q) {
      const double w = rule.weights[q] * det;
      const double* phi = &table.values[q * nl];
      for (int a = 0; a < nl; ++a)
        for (int b = 0; b < nl; ++b) local[a * nl + b] += w * phi[a] * phi[b];
    }
    scatter_local(pattern, c, nl, local.data(), out);
  }
}

void fill_stiffness_values(const FeSpace& space, const FePattern& pattern,
                           std::span<Complex> out) {
  const int k = space.degree;
  const int dim = space.mesh.dim;
  const QuadRule rule = quadrature_rule(dim, 2 * k);
  const BasisTable table = tabulate_basis(k, dim, rule);
  const int nl = table.n_local;

  std::fill(out.begin(), out.end(), Complex(0.0));
  std::vector<double> local(nl * nl);
  std::vector<Vec> phys_grad(nl);
  for (int c = 0; c < space.mesh.n_cells(); ++c) {
    const CellGeometry geom = cell_geometry(space.mesh, c);
    std::fill(local.begin(), local.end(), 0.0);
    for (int q = 0; q < table.n_points; ++q) {
      const double w = rule.weights[q] * geom.det;
      for (int a = 0; a < nl; ++a) {
        const Vec& rg = table.grad(q, a);
        Vec g{0.0, 0.0, 0.0};
        for (int cc = 0; cc < dim; ++cc)
          for (int l = 0; l < dim; ++l) g[cc] += geom.jacobian_inv[l][cc] * rg[l];
        phys_grad[a] = g;
      }
      for (int a = 0; a < nl; ++a)
        for (int b = 0; b < nl; ++b) {
          double dot = 0.0;
          for (int cc = 0; cc < dim; ++cc) dot += phys_grad[a][cc] * phys_grad[b][cc];
          local[a * nl + b] += w * dot;
        }
    }
    scatter_local(pattern, c, nl, local.data(), out);
  }
}

ComplexCsr assemble_mass(const FeSpace& space) {
  FePattern pattern = build_pattern(space);
  fill_mass_values(space, pattern, pattern.csr.values);
  return std::move(pattern.csr);
}

ComplexCsr assemble_stiffness(const FeSpace& space) {
  FePattern pattern = build_pattern(space);
  fill_stiffness_values(space, pattern, pattern.csr.values);
  return std::move(pattern.csr);
}

ComplexCsr assemble_weighted_mass(const FeSpace& space, const WeightFn& weight) {
  const int k = space.degree;
  const int dim = space.mesh.dim;
  const QuadRule rule = quadrature_rule(dim, 2 * k + 2);
  const BasisTable table = tabulate_basis(k, dim, rule);
  const std::vector<double> dets = compute_cell_dets(space);

  FePattern pattern = build_pattern(space);
  fill_weighted_mass_values(
      space, pattern, rule, table,
      [&](int cell, int q) -> Complex {
        const double w = weight(cell, rule.points[q]);
        if (std::isnan(w))
          throw InvalidWeight("assemble_weighted_mass: weight is NaN");
        return Complex(w, 0.0);
      },
      pattern.csr.values, dets);
  return std::move(pattern.csr);
}

DofVector assemble_load(const FeSpace& space,
                        const std::function<Complex(const Vec&, double)>& source,
                        double t) {
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
      const Complex f = source(x, t);
      if (std::isnan(f.real()) || std::isnan(f.imag()))
        throw InvalidSource("assemble_load: source is NaN at quadrature point");
      const Complex w = f * (rule.weights[q] * geom.det);
      const double* phi = &table.values[q * nl];
      for (int a = 0; a < nl; ++a) b[space.cell_dof(c, a)] += w * phi[a];
    }
  }
  return b;
}

ComplexCsr restrict_to_interior(const ComplexCsr& a, const FeSpace& space) {
  const int n_int = static_cast<int>(space.interior_dofs.size());
  std::vector<int> full_to_int(space.n_dofs(), -1);
  for (int i = 0; i < n_int; ++i) full_to_int[space.interior_dofs[i]] = i;

  ComplexCsr out;
  out.n_rows = n_int;
  out.n_cols = n_int;
  out.row_offsets.assign(n_int + 1, 0);
  for (int i = 0; i < n_int; ++i) {
    const int r = space.interior_dofs[i];
    for (int idx = a.row_offsets[r]; idx < a.row_offsets[r + 1]; ++idx) {
      const int cj = full_to_int[a.col_indices[idx]];
      if (cj >= 0) {
        out.col_indices.push_back(cj);
        out.values.push_back(a.values[idx]);
        ++out.row_offsets[i + 1];
      }
    }
  }
  for (int i = 0; i < n_int; ++i) out.row_offsets[i + 1] += out.row_offsets[i];
  return out;
}

std::vector<int> interior_nnz_map(const ComplexCsr& a, const FeSpace& space) {
  const int n_int = static_cast<int>(space.interior_dofs.size());
  std::vector<int> full_to_int(space.n_dofs(), -1);
  for (int i = 0; i < n_int; ++i) full_to_int[space.interior_dofs[i]] = i;

  std::vector<int> map(a.nnz(), -1);
  int next = 0;
  for (int i = 0; i < n_int; ++i) {
    const int r = space.interior_dofs[i];
    for (int idx = a.row_offsets[r]; idx < a.row_offsets[r + 1]; ++idx)
      if (full_to_int[a.col_indices[idx]] >= 0) map[idx] = next++;
  }
  return map;
}

DofVector restrict_vector(const DofVector& full, const FeSpace& space) {
  DofVector out(space.interior_dofs.size());
  for (std::size_t i = 0; i < space.interior_dofs.size(); ++i)
    out[i] = full[space.interior_dofs[i]];
  return out;
}

DofVector expand_with_zero_boundary(const DofVector& interior,
                                    const FeSpace& space) {
  DofVector out(space.n_dofs(), Complex(0.0));
  for (std::size_t i = 0; i < space.interior_dofs.size(); ++i)
    out[space.interior_dofs[i]] = interior[i];
  return out;
}

}  // namespace gldln

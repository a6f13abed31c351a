// Copyright gldln developers. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#include "gldln/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <map>
#include <ostream>
#include <stdexcept>

namespace gldln {

namespace {

double cell_diameter(const Mesh& mesh, int cell) {
  const int nv = mesh.verts_per_cell();
  double d2 = 0.0;
  for (int a = 0; a < nv; ++a) {
    for (int b = a + 1; b < nv; ++b) {
      const Vec& p = mesh.vertices[mesh.cell_vertex(cell, a)];
      const Vec& q = mesh.vertices[mesh.cell_vertex(cell, b)];
      double s = 0.0;
      for (int c = 0; c < 3; ++c) s += (p[c] - q[c]) * (p[c] - q[c]);
      d2 = std::max(d2, s);
    }
  }
  return std::sqrt(d2);
}

// Facet incidence over sorted vertex tuples. Boundary facets appear once,
// interior facets exactly twice (checked here so the invariant holds for
// every constructed mesh).
void finalize_mesh(Mesh& mesh) {
  const int nv = mesh.verts_per_cell();
  const int n_cells = mesh.n_cells();

  for (int c = 0; c < n_cells; ++c) {
    const CellGeometry geom = cell_geometry(mesh, c);
    if (!(geom.det > 0.0))
      throw std::invalid_argument("mesh: degenerate or inverted cell");
  }

  std::map<std::array<int, 3>, int> facet_count;
  for (int c = 0; c < n_cells; ++c) {
    for (int l = 0; l < nv; ++l) {
      std::array<int, 3> key{-1, -1, -1};
      int m = 0;
      for (int a = 0; a < nv; ++a)
        if (a != l) key[m++] = mesh.cell_vertex(c, a);
      std::sort(key.begin(), key.begin() + m);
      ++facet_count[key];
    }
  }

  mesh.vertex_on_boundary.assign(mesh.vertices.size(), false);
  mesh.cell_facet_on_boundary.assign(n_cells, {false, false, false, false});
  for (int c = 0; c < n_cells; ++c) {
    for (int l = 0; l < nv; ++l) {
      std::array<int, 3> key{-1, -1, -1};
      int m = 0;
      for (int a = 0; a < nv; ++a)
        if (a != l) key[m++] = mesh.cell_vertex(c, a);
      std::sort(key.begin(), key.begin() + m);
      const int count = facet_count.at(key);
      if (count != 1 && count != 2)
        throw std::invalid_argument("mesh: non-conforming facet");
      if (count == 1) {
        mesh.cell_facet_on_boundary[c][l] = true;
        for (int a = 0; a < nv; ++a)
          if (a != l) mesh.vertex_on_boundary[mesh.cell_vertex(c, a)] = true;
      }
    }
  }

  double hmax = 0.0;
  for (int c = 0; c < n_cells; ++c) hmax = std::max(hmax, cell_diameter(mesh, c));
  mesh.h = hmax;
}

}  // namespace

int Mesh::n_boundary_vertices() const {
  int count = 0;
  for (bool b : vertex_on_boundary) count += b ? 1 : 0;
  return count;
}

Mesh build_unit_square_mesh(int n) {
  if (n < 1) throw std::invalid_argument("build_unit_square_mesh: n must be >= 1");
  Mesh mesh;
  mesh.dim = 2;
  mesh.n = n;

  const int m = n + 1;
  mesh.vertices.reserve(static_cast<std::size_t>(m) * m);
  mesh.vertex_lattice.reserve(static_cast<std::size_t>(m) * m);
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < m; ++j) {
      mesh.vertices.push_back({double(i) / n, double(j) / n, 0.0});
      mesh.vertex_lattice.push_back({i, j, 0});
    }
  }

  auto vid = [m](int i, int j) { return i * m + j; };
  mesh.cell_vertices.reserve(static_cast<std::size_t>(6) * n * n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const int a = vid(i, j), b = vid(i + 1, j), c = vid(i + 1, j + 1),
                d = vid(i, j + 1);
      // split along the a-c diagonal; both triangles counterclockwise
      mesh.cell_vertices.insert(mesh.cell_vertices.end(), {a, b, c});
      mesh.cell_vertices.insert(mesh.cell_vertices.end(), {a, c, d});
    }
  }

  finalize_mesh(mesh);
  return mesh;
}

Mesh build_unit_cube_mesh(int n) {
  if (n < 1) throw std::invalid_argument("build_unit_cube_mesh: n must be >= 1");
  Mesh mesh;
  mesh.dim = 3;
  mesh.n = n;

  const int m = n + 1;
  mesh.vertices.reserve(static_cast<std::size_t>(m) * m * m);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j)
      for (int k = 0; k < m; ++k) {
        mesh.vertices.push_back({double(i) / n, double(j) / n, double(k) / n});
        mesh.vertex_lattice.push_back({i, j, k});
      }

  auto vid = [m](int i, int j, int k) { return (i * m + j) * m + k; };

  // Kuhn subdivision: one tetrahedron per axis permutation, walking from the
  // low corner to the high corner of the cube.
  constexpr int perms[6][3] = {{0, 1, 2}, {0, 2, 1}, {1, 0, 2},
                               {1, 2, 0}, {2, 0, 1}, {2, 1, 0}};
  constexpr bool odd[6] = {false, true, true, false, false, true};

  mesh.cell_vertices.reserve(static_cast<std::size_t>(24) * n * n * n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      for (int k = 0; k < n; ++k) {
        for (int p = 0; p < 6; ++p) {
          int corner[3] = {i, j, k};
          std::array<int, 4> tet;
          tet[0] = vid(corner[0], corner[1], corner[2]);
          for (int step = 0; step < 3; ++step) {
            ++corner[perms[p][step]];
            tet[step + 1] = vid(corner[0], corner[1], corner[2]);
          }
          if (odd[p]) std::swap(tet[1], tet[2]);  // restore positive orientation
          mesh.cell_vertices.insert(mesh.cell_vertices.end(), tet.begin(),
                                    tet.end());
        }
      }
    }
  }

  finalize_mesh(mesh);
  return mesh;
}

CellGeometry cell_geometry(const Mesh& mesh, int cell_index) {
  if (cell_index < 0 || cell_index >= mesh.n_cells())
    throw std::invalid_argument("cell_geometry: cell index out of range");

  CellGeometry g{};
  g.origin = mesh.vertices[mesh.cell_vertex(cell_index, 0)];
  for (auto& row : g.jacobian) row = {0.0, 0.0, 0.0};
  for (auto& row : g.jacobian_inv) row = {0.0, 0.0, 0.0};
  g.jacobian[2][2] = 1.0;
  g.jacobian_inv[2][2] = 1.0;

  for (int l = 1; l <= mesh.dim; ++l) {
    const Vec& v = mesh.vertices[mesh.cell_vertex(cell_index, l)];
    for (int c = 0; c < mesh.dim; ++c) g.jacobian[c][l - 1] = v[c] - g.origin[c];
  }

  const auto& J = g.jacobian;
  if (mesh.dim == 2) {
    g.det = J[0][0] * J[1][1] - J[0][1] * J[1][0];
    if (g.det != 0.0) {
      const double inv = 1.0 / g.det;
      g.jacobian_inv[0][0] = J[1][1] * inv;
      g.jacobian_inv[0][1] = -J[0][1] * inv;
      g.jacobian_inv[1][0] = -J[1][0] * inv;
      g.jacobian_inv[1][1] = J[0][0] * inv;
    }
  } else {
    g.det = J[0][0] * (J[1][1] * J[2][2] - J[1][2] * J[2][1]) -
            J[0][1] * (J[1][0] * J[2][2] - J[1][2] * J[2][0]) +
            J[0][2] * (J[1][0] * J[2][1] - J[1][1] * J[2][0]);
    if (g.det != 0.0) {
      const double inv = 1.0 / g.det;
      g.jacobian_inv[0][0] = (J[1][1] * J[2][2] - J[1][2] * J[2][1]) * inv;
      g.jacobian_inv[0][1] = (J[0][2] * J[2][1] - J[0][1] * J[2][2]) * inv;
      g.jacobian_inv[0][2] = (J[0][1] * J[1][2] - J[0][2] * J[1][1]) * inv;
      g.jacobian_inv[1][0] = (J[1][2] * J[2][0] - J[1][0] * J[2][2]) * inv;
      g.jacobian_inv[1][1] = (J[0][0] * J[2][2] - J[0][2] * J[2][0]) * inv;
      g.jacobian_inv[1][2] = (J[0][2] * J[1][0] - J[0][0] * J[1][2]) * inv;
      g.jacobian_inv[2][0] = (J[1][0] * J[2][1] - J[1][1] * J[2][0]) * inv;
      g.jacobian_inv[2][1] = (J[0][1] * J[2][0] - J[0][0] * J[2][1]) * inv;
      g.jacobian_inv[2][2] = (J[0][0] * J[1][1] - J[0][1] * J[1][0]) * inv;
    }
  }
  return g;
}

Vec map_to_physical(const CellGeometry& geom, const Vec& ref_point) {
  Vec x = geom.origin;
  for (int c = 0; c < 3; ++c)
    for (int l = 0; l < 3; ++l) x[c] += geom.jacobian[c][l] * ref_point[l];
  return x;
}

void dump_mesh(const Mesh& mesh, std::ostream& out) {
  out << mesh.dim << ' ' << mesh.n_vertices() << ' ' << mesh.n_cells() << '\n';
  out << std::setprecision(17);
  for (const Vec& v : mesh.vertices) {
    out << v[0] << ' ' << v[1];
    if (mesh.dim == 3) out << ' ' << v[2];
    out << '\n';
  }
  const int nv = mesh.verts_per_cell();
  for (int c = 0; c < mesh.n_cells(); ++c) {
    for (int l = 0; l < nv; ++l) {
      if (l) out << ' ';
      out << mesh.cell_vertex(c, l);
    }
    out << '\n';
  }
}

}  // namespace gldln

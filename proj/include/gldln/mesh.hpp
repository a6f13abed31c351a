// Copyright gldln developers. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#ifndef GLDLN_MESH_HPP
#define GLDLN_MESH_HPP

#include <array>
#include <iosfwd>
#include <vector>

#include "gldln/types.hpp"

namespace gldln {

/// Simplicial triangulation of the unit square (dim 2) or unit cube (dim 3),
/// built from a structured n x n (x n) grid. Immutable after construction.
struct Mesh {
  int dim = 0;             // 2 or 3
  int n = 0;               // subdivisions per axis
  double h = 0.0;          // maximum cell diameter
  std::vector<Vec> vertices;
  std::vector<std::array<int, 3>> vertex_lattice;  // coordinates in units of 1/n
  std::vector<int> cell_vertices;                  // flat, stride = dim + 1
  std::vector<bool> vertex_on_boundary;
  // Per cell, per local facet (the facet opposite local vertex l): true when
  // the facet lies on the domain boundary.
  std::vector<std::array<bool, 4>> cell_facet_on_boundary;

  int verts_per_cell() const { return dim + 1; }
  int n_cells() const {
    return static_cast<int>(cell_vertices.size()) / (dim + 1);
  }
  int n_vertices() const { return static_cast<int>(vertices.size()); }
  int cell_vertex(int cell, int local) const {
    return cell_vertices[static_cast<std::size_t>(cell) * (dim + 1) + local];
  }
  int n_boundary_vertices() const;
};

/// Affine map from the reference simplex onto a physical cell:
/// x = origin + J * x_ref. det > 0 by the mesh orientation invariant.
struct CellGeometry {
  Vec origin;
  std::array<std::array<double, 3>, 3> jacobian;      // column l = edge vector
  std::array<std::array<double, 3>, 3> jacobian_inv;  // inverse of the dim block
  double det;                                         // |det J|
};

/// Uniform grid on [0,1]^2, every square split along the lower-left to
/// upper-right diagonal. (n+1)^2 vertices, 2n^2 positively oriented triangles,
/// h = sqrt(2)/n.
Mesh build_unit_square_mesh(int n);

/// Uniform grid on [0,1]^3 with every cube split into the 6 Kuhn tetrahedra.
/// Identical subdivision in all cubes keeps the faces conforming.
/// (n+1)^3 vertices, 6n^3 tetrahedra, h = sqrt(3)/n.
Mesh build_unit_cube_mesh(int n);

CellGeometry cell_geometry(const Mesh& mesh, int cell_index);

/// Maps a reference-simplex point to the physical cell.
Vec map_to_physical(const CellGeometry& geom, const Vec& ref_point);

/// Plain-text dump: header "dim n_vertices n_cells", vertex coordinate lines,
/// then 0-based cell index lines.
void dump_mesh(const Mesh& mesh, std::ostream& out);

}  // namespace gldln

#endif  // GLDLN_MESH_HPP

// Copyright gldln developers. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <cmath>

#include "gldln/assembly.hpp"
#include "oracles.hpp"

using namespace gldln;

namespace {

Complex entry(const ComplexCsr& a, int r, int c) {
  for (int i = a.row_offsets[r]; i < a.row_offsets[r + 1]; ++i)
    if (a.col_indices[i] == c) return a.values[i];
  return Complex(0.0);
}

// single-cell space over the reference triangle
FeSpace reference_triangle_space(int k) {
  Mesh mesh;
  mesh.dim = 2;
  mesh.n = 1;
  mesh.h = std::sqrt(2.0);
  mesh.vertices = {{0.0, 0.0, 0.0}, {1.0, 0.0, 0.0}, {0.0, 1.0, 0.0}};
  mesh.vertex_lattice = {{0, 0, 0}, {1, 0, 0}, {0, 1, 0}};
  mesh.cell_vertices = {0, 1, 2};
  mesh.cell_facet_on_boundary = {{true, true, true, false}};
  return build_space(mesh, k);
}

double max_abs_imag(const ComplexCsr& a) {
  double m = 0.0;
  for (const Complex& v : a.values) m = std::max(m, std::abs(v.imag()));
  return m;
}

}  // namespace

TEST_CASE("mass matrix: partition-of-unity sum and symmetry") {
  const FeSpace space = build_space(build_unit_square_mesh(4), 1);
  const ComplexCsr m = assemble_mass(space);

  Complex sum = 0.0;
  for (const Complex& v : m.values) sum += v;
  CHECK(std::abs(sum - Complex(1.0)) <= 1e-12);
  CHECK(max_abs_imag(m) <= 1e-15);

  for (int r = 0; r < m.n_rows; ++r)
    for (int i = m.row_offsets[r]; i < m.row_offsets[r + 1]; ++i)
      CHECK(entry(m, m.col_indices[i], r) == m.values[i]);  // exact symmetry

  // positive lumped masses equal to the basis integrals
  const DofVector loads = assemble_load(
      space, [](const Vec&, double) { return Complex(1.0); }, 0.0);
  for (int r = 0; r < m.n_rows; ++r) {
    Complex row_sum = 0.0;
    for (int i = m.row_offsets[r]; i < m.row_offsets[r + 1]; ++i)
      row_sum += m.values[i];
    CHECK(row_sum.real() > 0.0);
    CHECK(std::abs(row_sum - loads[r]) <= 1e-13);
  }
}

TEST_CASE("P1 local mass matrix on the reference triangle") {
  const FeSpace space = reference_triangle_space(1);
  const ComplexCsr m = assemble_mass(space);
  // node g maps local (0,0),(1,0),(0,1) -> sorted coordinates
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b) {
      const double want = (a == b ? 2.0 : 1.0) / 24.0;
      CHECK(std::abs(entry(m, a, b) - Complex(want)) <= 1e-15);
    }
}

TEST_CASE("P1 local stiffness matrix on the reference triangle") {
  const FeSpace space = reference_triangle_space(1);
  const ComplexCsr a = assemble_stiffness(space);
  // global numbering sorts nodes lexicographically: (0,0), (0,1), (1,0)
  const double want[3][3] = {{1.0, -0.5, -0.5}, {-0.5, 0.5, 0.0}, {-0.5, 0.0, 0.5}};
  for (int r = 0; r < 3; ++r)
    for (int c = 0; c < 3; ++c)
      CHECK(std::abs(entry(a, r, c) - Complex(want[r][c])) <= 1e-14);
}

TEST_CASE("stiffness annihilates constants and has zero row sums") {
  const FeSpace space = build_space(build_unit_square_mesh(5), 2);
  const ComplexCsr a = assemble_stiffness(space);
  const DofVector ones(space.n_dofs(), Complex(1.0));
  const DofVector y = matvec(a, ones);
  for (const Complex& v : y) CHECK(std::abs(v) <= 1e-12);
}

TEST_CASE("Dirichlet energy of the sine product") {
  // x* A x for the interpolant of sin(pi x) sin(pi y) approximates
  // ||grad u||^2 = pi^2 / 2
  const FeSpace space = build_space(build_unit_square_mesh(20), 1);
  const ComplexCsr a = assemble_stiffness(space);
  const DofVector u = interpolate(space, [](const Vec& x) {
    return Complex(std::sin(M_PI * x[0]) * std::sin(M_PI * x[1]));
  });
  const double energy = std::real(m_inner_product(a, u, u));
  CHECK(energy == doctest::Approx(M_PI * M_PI / 2.0).epsilon(0.02));
}

TEST_CASE("weighted mass: constant weights reduce to scaled mass") {
  const FeSpace space = build_space(build_unit_square_mesh(3), 2);
  const ComplexCsr m = assemble_mass(space);

  const ComplexCsr w1 =
      assemble_weighted_mass(space, [](int, const Vec&) { return 1.0; });
  CHECK(w1.nnz() == m.nnz());
  for (int i = 0; i < m.nnz(); ++i)
    CHECK(std::abs(w1.values[i] - m.values[i]) <= 1e-13);

  const ComplexCsr w0 =
      assemble_weighted_mass(space, [](int, const Vec&) { return 0.0; });
  for (const Complex& v : w0.values) CHECK(std::abs(v) == 0.0);
}

TEST_CASE("weighted mass with |u|^2 weight for a constant field") {
  const FeSpace space = build_space(build_unit_square_mesh(3), 1);
  const ComplexCsr m = assemble_mass(space);
  const DofVector two(space.n_dofs(), Complex(2.0, 0.0));
  const ComplexCsr w = assemble_weighted_mass(
      space, [&](int cell, const Vec& ref) {
        return std::norm(eval_fe_function(space, two, cell, ref).first);
      });
  for (int i = 0; i < m.nnz(); ++i)
    CHECK(std::abs(w.values[i] - 4.0 * m.values[i]) <= 1e-12);
}

TEST_CASE("weight returning NaN is rejected") {
  const FeSpace space = build_space(build_unit_square_mesh(2), 1);
  CHECK_THROWS_AS(assemble_weighted_mass(
                      space,
                      [](int, const Vec&) {
                        return std::numeric_limits<double>::quiet_NaN();
                      }),
                  InvalidWeight);
}

TEST_CASE("load vector basics") {
  const FeSpace space = build_space(build_unit_square_mesh(4), 2);

  const DofVector zero = assemble_load(
      space, [](const Vec&, double) { return Complex(0.0); }, 0.0);
  CHECK(l2_norm(zero) == 0.0);

  const DofVector ones = assemble_load(
      space, [](const Vec&, double) { return Complex(1.0); }, 0.0);
  Complex sum = 0.0;
  for (const Complex& v : ones) sum += v;
  CHECK(std::abs(sum - Complex(1.0)) <= 1e-12);

  CHECK_THROWS_AS(
      assemble_load(
          space,
          [](const Vec&, double) {
            return Complex(std::numeric_limits<double>::quiet_NaN());
          },
          0.0),
      InvalidSource);
}

TEST_CASE("load of a basis function equals the mass column") {
  const FeSpace space = build_space(build_unit_square_mesh(3), 1);
  const ComplexCsr m = assemble_mass(space);
  const int j = space.interior_dofs.at(1);
  DofVector unit(space.n_dofs(), Complex(0.0));
  unit[j] = Complex(1.0);
  const auto field = gldln::testing::fe_as_field(space, unit);
  const DofVector b = assemble_load(
      space, [&](const Vec& x, double) { return field.value(x); }, 0.0);
  for (int r = 0; r < space.n_dofs(); ++r)
    CHECK(std::abs(b[r] - entry(m, r, j)) <= 1e-13);
}

TEST_CASE("assembly is additive over cells (scatter oracle)") {
  const Mesh mesh = build_unit_square_mesh(1);
  const FeSpace space = build_space(mesh, 1);
  const ComplexCsr m = assemble_mass(space);

  // per-cell local mass scattered by hand
  const QuadRule rule = quadrature_rule(2, 2);
  const BasisTable table = tabulate_basis(1, 2, rule);
  std::vector<std::vector<Complex>> dense(
      space.n_dofs(), std::vector<Complex>(space.n_dofs(), 0.0));
  for (int c = 0; c < mesh.n_cells(); ++c) {
    const double det = cell_geometry(mesh, c).det;
    for (int q = 0; q < table.n_points; ++q)
      for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b)
          dense[space.cell_dof(c, a)][space.cell_dof(c, b)] +=
              rule.weights[q] * det * table.value(q, a) * table.value(q, b);
  }
  for (int r = 0; r < space.n_dofs(); ++r)
    for (int c = 0; c < space.n_dofs(); ++c)
      CHECK(std::abs(entry(m, r, c) - dense[r][c]) <= 1e-14);
}

TEST_CASE("quadrature refinement stability for polynomial integrands") {
  // mass entries are degree-2k polynomials: the 2k rule and the 2k+2 rule
  // (used by the weighted assembler) must agree to roundoff
  for (int k : {1, 2}) {
    const FeSpace space = build_space(build_unit_square_mesh(3), k);
    const ComplexCsr m = assemble_mass(space);
    const ComplexCsr w =
        assemble_weighted_mass(space, [](int, const Vec&) { return 1.0; });
    for (int i = 0; i < m.nnz(); ++i)
      CHECK(std::abs(m.values[i] - w.values[i]) <= 1e-12);
  }
}

TEST_CASE("interior restriction drops boundary rows and columns") {
  const FeSpace space = build_space(build_unit_square_mesh(3), 1);
  const ComplexCsr m = assemble_mass(space);
  const ComplexCsr mi = restrict_to_interior(m, space);
  const int n_int = static_cast<int>(space.interior_dofs.size());
  CHECK(mi.n_rows == n_int);
  CHECK(mi.n_cols == n_int);
  for (int i = 0; i < n_int; ++i)
    for (int j = 0; j < n_int; ++j)
      CHECK(std::abs(entry(mi, i, j) -
                     entry(m, space.interior_dofs[i], space.interior_dofs[j])) ==
            0.0);

  const std::vector<int> map = interior_nnz_map(m, space);
  int mapped = 0;
  for (int i = 0; i < m.nnz(); ++i)
    if (map[i] >= 0) {
      CHECK(mi.values[map[i]] == m.values[i]);
      ++mapped;
    }
  CHECK(mapped == mi.nnz());
}

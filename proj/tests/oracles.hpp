// Copyright gldln developers. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

// Test-only oracles, independent of the library's computation paths.

#ifndef GLDLN_TESTS_ORACLES_HPP
#define GLDLN_TESTS_ORACLES_HPP

#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include "gldln/fespace.hpp"
#include "gldln/problems.hpp"
#include "gldln/types.hpp"

namespace gldln::testing {

// Exact integral of x^a y^b (z^c) over the unit reference simplex:
// a! b! / (a+b+2)! in 2D, a! b! c! / (a+b+c+3)! in 3D.
inline double exact_monomial_integral(int dim, int a, int b, int c = 0) {
  auto fact = [](int m) {
    double f = 1.0;
    for (int i = 2; i <= m; ++i) f *= i;
    return f;
  };
  if (dim == 2) return fact(a) * fact(b) / fact(a + b + 2);
  return fact(a) * fact(b) * fact(c) / fact(a + b + c + 3);
}

// Dense accumulation oracle for triplet assembly.
inline std::vector<std::vector<Complex>> dense_from_triplets(
    int n_rows, int n_cols, const std::vector<Triplet>& triplets) {
  std::vector<std::vector<Complex>> dense(n_rows,
                                          std::vector<Complex>(n_cols, 0.0));
  for (const Triplet& t : triplets) dense[t.row][t.col] += t.value;
  return dense;
}

inline DofVector random_complex_vector(std::mt19937& rng, int n,
                                       double scale = 1.0) {
  std::uniform_real_distribution<double> dist(-scale, scale);
  DofVector v(n);
  for (Complex& c : v) c = Complex(dist(rng), dist(rng));
  return v;
}

// Locates the cell of a structured mesh containing the physical point and
// returns (cell, reference coordinates). Assumes x inside [0,1]^dim.
inline std::pair<int, Vec> locate_point(const Mesh& mesh, const Vec& x) {
  const int n = mesh.n;
  auto clamp_cell = [n](double t) {
    int i = static_cast<int>(t * n);
    return std::min(std::max(i, 0), n - 1);
  };
  const int cells_per_block = mesh.dim == 2 ? 2 : 6;
  int block;
  if (mesh.dim == 2) {
    block = clamp_cell(x[0]) * n + clamp_cell(x[1]);
  } else {
    block = (clamp_cell(x[0]) * n + clamp_cell(x[1])) * n + clamp_cell(x[2]);
  }
  for (int local = 0; local < cells_per_block; ++local) {
    const int cell = block * cells_per_block + local;
    const CellGeometry geom = cell_geometry(mesh, cell);
    Vec rel{x[0] - geom.origin[0], x[1] - geom.origin[1], x[2] - geom.origin[2]};
    Vec ref{0.0, 0.0, 0.0};
    for (int r = 0; r < mesh.dim; ++r)
      for (int cidx = 0; cidx < mesh.dim; ++cidx)
        ref[r] += geom.jacobian_inv[r][cidx] * rel[cidx];
    double lambda0 = 1.0;
    bool inside = true;
    for (int d = 0; d < mesh.dim; ++d) {
      lambda0 -= ref[d];
      inside = inside && ref[d] >= -1e-10;
    }
    if (inside && lambda0 >= -1e-10) return {cell, ref};
  }
  throw std::runtime_error("locate_point: no containing cell found");
}

// Wraps an FE coefficient vector as a ScalarField via point location.
inline ScalarField fe_as_field(const FeSpace& space, DofVector coeffs) {
  auto value = [&space, coeffs](const Vec& x) {
    const auto [cell, ref] = locate_point(space.mesh, x);
    return eval_fe_function(space, coeffs, cell, ref).first;
  };
  auto gradient = [&space, coeffs](const Vec& x) {
    const auto [cell, ref] = locate_point(space.mesh, x);
    return eval_fe_function(space, coeffs, cell, ref).second;
  };
  return {value, gradient, nullptr};
}

// Finite-difference reconstruction of the source of equation `which` from the
// exact solutions: central differences in t, 5/7-point Laplacian stencil.
inline Complex fd_source_oracle(const GlProblem& problem, int which,
                                const Vec& x, double t, double step = 1e-4) {
  auto u = [&](const Vec& p, double s) {
    return eval_exact(problem, 'u', p, s).first;
  };
  auto v = [&](const Vec& p, double s) {
    return eval_exact(problem, 'v', p, s).first;
  };
  auto w = [&](const Vec& p, double s) {
    return which == 1 ? u(p, s) : v(p, s);
  };

  const Complex wt = (w(x, t + step) - w(x, t - step)) / (2.0 * step);

  Complex lap = -2.0 * problem.dim * w(x, t);
  for (int d = 0; d < problem.dim; ++d) {
    Vec xp = x, xm = x;
    xp[d] += step;
    xm[d] -= step;
    lap += w(xp, t) + w(xm, t);
  }
  lap /= step * step;

  const GlCoefficients& co = problem.coeff;
  const double su = std::norm(u(x, t));
  const double sv = std::norm(v(x, t));
  const Complex c_nu = which == 1 ? Complex(co.nu1, co.alpha1)
                                  : Complex(co.nu2, co.alpha2);
  const Complex c_f = which == 1 ? Complex(co.kappa1, co.beta1)
                                 : Complex(co.kappa2, co.beta2);
  const Complex c_g =
      which == 1 ? Complex(co.mu1, co.delta1) : Complex(co.mu2, co.delta2);
  const double gamma = which == 1 ? co.gamma1 : co.gamma2;
  const double fval = which == 1 ? problem.nl.f1(su) : problem.nl.f2(su);
  const double gval = which == 1 ? problem.nl.g1(sv) : problem.nl.g2(sv);

  return wt - c_nu * lap + (c_f * fval + c_g * gval) * w(x, t) -
         gamma * w(x, t);
}

inline Vec random_interior_point(std::mt19937& rng, int dim, double margin) {
  std::uniform_real_distribution<double> dist(margin, 1.0 - margin);
  Vec x{0.0, 0.0, 0.0};
  for (int d = 0; d < dim; ++d) x[d] = dist(rng);
  return x;
}

}  // namespace gldln::testing

#endif  // GLDLN_TESTS_ORACLES_HPP

// Copyright gldln developers. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <cmath>
#include <random>

#include "gldln/analysis.hpp"
#include "gldln/assembly.hpp"
#include "gldln/dln.hpp"
#include "oracles.hpp"

using namespace gldln;
using gldln::testing::random_complex_vector;

namespace {

SpaceTimeField sine_exact() {
  return {[](const Vec& x, double) {
            return Complex(std::sin(M_PI * x[0]) * std::sin(M_PI * x[1]));
          },
          [](const Vec& x, double) {
            return CVec{M_PI * std::cos(M_PI * x[0]) * std::sin(M_PI * x[1]),
                        M_PI * std::sin(M_PI * x[0]) * std::cos(M_PI * x[1]),
                        0.0};
          }};
}

ComplexCsr identity_matrix(int n) {
  std::vector<Triplet> trips;
  for (int i = 0; i < n; ++i) trips.push_back({i, i, Complex(1.0)});
  return csr_from_triplets(n, n, trips);
}

}  // namespace

TEST_CASE("error norms vanish for exact FE representations") {
  const FeSpace space = build_space(build_unit_square_mesh(4), 1);
  const SpaceTimeField linear{
      [](const Vec& x, double) { return Complex(x[0], 2.0 * x[1]); },
      [](const Vec&, double) {
        return CVec{Complex(1.0, 0.0), Complex(0.0, 2.0), 0.0};
      }};
  const DofVector u =
      interpolate(space, [](const Vec& x) { return Complex(x[0], 2.0 * x[1]); });
  const auto [e0, e1] = error_norms(space, u, linear, 0.0);
  CHECK(e0 <= 1e-12);
  CHECK(e1 <= 1e-12);
}

TEST_CASE("error norms of zero against the sine product") {
  // ||u|| = 1/2 and ||grad u|| = pi / sqrt(2)
  const FeSpace space = build_space(build_unit_square_mesh(16), 1);
  const DofVector zero(space.n_dofs(), Complex(0.0));
  const auto [e0, e1] = error_norms(space, zero, sine_exact(), 0.0);
  CHECK(e0 == doctest::Approx(0.5).epsilon(1e-8));
  CHECK(e1 == doctest::Approx(M_PI / std::sqrt(2.0)).epsilon(1e-8));
}

TEST_CASE("convergence orders") {
  const std::vector<double> errors = {0.4, 0.1};
  const std::vector<double> params = {1.0 / 5.0, 1.0 / 10.0};
  const std::vector<double> orders = convergence_order(errors, params);
  CHECK(orders.size() == 1);
  CHECK(orders[0] == doctest::Approx(2.0).epsilon(1e-12));

  // Table 1 pair: printed errors reproduce the printed order to rounding
  const std::vector<double> table1 = {6.8428e-01, 3.4723e-01};
  CHECK(convergence_order(table1, params)[0] ==
        doctest::Approx(0.9787).epsilon(2e-4));

  const std::vector<double> flat = {0.3, 0.3, 0.3};
  const std::vector<double> p3 = {0.2, 0.1, 0.05};
  for (double ord : convergence_order(flat, p3))
    CHECK(ord == doctest::Approx(0.0));

  const std::vector<double> with_zero = {0.1, 0.0};
  CHECK(std::isnan(convergence_order(with_zero, params)[0]));

  CHECK_THROWS_AS(convergence_order(std::vector<double>{1.0}, params),
                  std::invalid_argument);
}

TEST_CASE("G-stability identity: scalar case") {
  const ComplexCsr eye = identity_matrix(1);
  const DofVector v0 = {Complex(0.0)};
  const DofVector v1 = {Complex(0.0)};
  const DofVector v2 = {Complex(1.0)};
  const GIdentityResult r =
      check_g_stability_identity(0.5, 1.0, v0, v1, v2, eye);
  CHECK(r.lhs == doctest::Approx(0.421875).epsilon(1e-14));
  CHECK(r.rhs == doctest::Approx(0.421875).epsilon(1e-14));
  CHECK(r.diff <= 1e-15);
}

TEST_CASE("G-stability identity reduces to CN telescoping at theta = 1") {
  std::mt19937 rng(67);
  const ComplexCsr eye = identity_matrix(4);
  const DofVector v0 = random_complex_vector(rng, 4);
  const DofVector v1 = random_complex_vector(rng, 4);
  const DofVector v2 = random_complex_vector(rng, 4);
  const double tau = 0.25;
  const GIdentityResult r = check_g_stability_identity(1.0, tau, v0, v1, v2, eye);
  double n2 = 0.0, n1 = 0.0;
  for (const Complex& c : v2) n2 += std::norm(c);
  for (const Complex& c : v1) n1 += std::norm(c);
  CHECK(r.rhs == doctest::Approx((n2 - n1) / (2.0 * tau)).epsilon(1e-12));
  CHECK(r.diff <= 1e-12 * (1.0 + std::abs(r.lhs)));
}

TEST_CASE("G-stability identity on random vectors with the mass inner product") {
  const FeSpace space = build_space(build_unit_square_mesh(5), 1);
  const ComplexCsr m = assemble_mass(space);
  std::mt19937 rng(71);
  for (int trial = 0; trial < 500; ++trial) {
    const double theta = (trial % 11) * 0.1;
    const double tau = 0.01 + 0.1 * ((trial * 7) % 10);
    const DofVector v0 = random_complex_vector(rng, space.n_dofs());
    const DofVector v1 = random_complex_vector(rng, space.n_dofs());
    const DofVector v2 = random_complex_vector(rng, space.n_dofs());
    const GIdentityResult r =
        check_g_stability_identity(theta, tau, v0, v1, v2, m);
    CHECK(r.diff <= 1e-11 * (1.0 + std::abs(r.lhs)));
  }
}

TEST_CASE("transfer inequality: spec scalar cases") {
  const ComplexCsr eye = identity_matrix(1);

  // constant sequence
  std::vector<DofVector> constant(6, DofVector{Complex(2.0, -1.0)});
  const TransferResult rc = check_transfer_inequality(0.7, constant, eye);
  CHECK(rc.ok);
  CHECK(rc.min_slack > 0.0);

  // alternating sequence at theta = 0 attains equality
  std::vector<DofVector> alternating;
  for (int k = 0; k < 8; ++k)
    alternating.push_back(DofVector{Complex(k % 2 == 0 ? 1.0 : -1.0)});
  const TransferResult ra = check_transfer_inequality(0.0, alternating, eye);
  CHECK(ra.ok);
  CHECK(std::abs(ra.min_slack) <= 1e-15);
}

TEST_CASE("transfer inequality on random sequences") {
  const FeSpace space = build_space(build_unit_square_mesh(3), 1);
  const ComplexCsr m = assemble_mass(space);
  std::mt19937 rng(73);
  for (int trial = 0; trial < 200; ++trial) {
    const double theta = (trial % 11) * 0.1;
    std::vector<DofVector> seq;
    for (int k = 0; k < 10; ++k)
      seq.push_back(random_complex_vector(rng, space.n_dofs()));
    const TransferResult r = check_transfer_inequality(theta, seq, m);
    CHECK(r.min_slack >= -1e-12);
  }
}

TEST_CASE("error norms are quadrature-stable on converged runs") {
  const GlProblem p = make_example(1);
  const DlnConfig config = make_config(0.5, 0.05, 1.0);
  const int n = 8, k = 1;
  const SimulationResult sim = run_simulation(p, config, n, k);
  const FeSpace space = build_space(build_unit_square_mesh(n), k);

  const auto [e0a, e1a] = error_norms(space, sim.u, *p.exact_u, 1.0);
  const auto [e0b, e1b] = error_norms(space, sim.u, *p.exact_u, 1.0, 2 * k + 6);
  CHECK(std::abs(e0a - e0b) <= 1e-3 * e0a);
  CHECK(std::abs(e1a - e1b) <= 1e-3 * e1a);
}

TEST_CASE("Example 1 errors at h=1/5 match the reported magnitude") {
  // theta = 0.25, k = 1, small tau; reported E1_u is 6.8428e-01
  const GlProblem p = make_example(1);
  const DlnConfig config = make_config(0.25, 1e-3, 1.0);
  const SimulationResult sim = run_simulation(p, config, 5, 1);
  const FeSpace space = build_space(build_unit_square_mesh(5), 1);
  const auto [e0, e1] = error_norms(space, sim.u, *p.exact_u, 1.0);
  CHECK(e1 > 0.5 * 6.8428e-01);
  CHECK(e1 < 2.0 * 6.8428e-01);
}

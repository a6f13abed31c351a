// Copyright gldln developers. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <cmath>
#include <random>

#include "gldln/problems.hpp"
#include "oracles.hpp"

using namespace gldln;
using gldln::testing::fd_source_oracle;
using gldln::testing::random_interior_point;

namespace {

Vec random_boundary_point(std::mt19937& rng, int dim) {
  std::uniform_real_distribution<double> dist(0.0, 1.0);
  std::uniform_int_distribution<int> axis(0, dim - 1);
  std::uniform_int_distribution<int> side(0, 1);
  Vec x{0.0, 0.0, 0.0};
  for (int d = 0; d < dim; ++d) x[d] = dist(rng);
  x[axis(rng)] = static_cast<double>(side(rng));
  return x;
}

}  // namespace

TEST_CASE("Example 1 spot values") {
  const GlProblem p = make_example(1);
  const Complex i(0.0, 1.0);

  // u(x, 0) = i sin(pi x) sin(pi y)
  CHECK(std::abs(p.initial_u.value({0.5, 0.5, 0.0}) - i) <= 1e-15);

  // pure-phase time factor: u(0.5, 0.5, 1) = i exp(i)
  const Complex u1 = eval_exact(p, 'u', {0.5, 0.5, 0.0}, 1.0).first;
  CHECK(std::abs(u1 - i * std::exp(i)) <= 1e-14);
  CHECK(std::abs(std::abs(u1) - 1.0) <= 1e-14);

  // v(x, 0) = sin(x)(1-x) sin(y)(1-y)
  const double q = std::sin(0.3) * 0.7;
  const double r = std::sin(0.8) * 0.2;
  CHECK(std::abs(eval_exact(p, 'v', {0.3, 0.8, 0.0}, 0.0).first -
                 Complex(q * r)) <= 1e-14);

  // f1(s) = s for both couplings
  CHECK(p.nl.f1(2.0) == doctest::Approx(2.0));
  CHECK(p.nl.g1(3.0) == doctest::Approx(3.0));
}

TEST_CASE("Example 2 spot values") {
  const GlProblem p = make_example(2);
  CHECK(p.nl.f1(2.0) == doctest::Approx(6.0));  // s + s^2 at s = 2
  CHECK(p.nl.g2(2.0) == doctest::Approx(6.0));
  CHECK(p.coeff.nu2 == doctest::Approx(5.0));
  CHECK(p.coeff.alpha2 == doctest::Approx(1.0));
  CHECK(p.coeff.kappa2 == doctest::Approx(4.0));
  CHECK(p.coeff.mu2 == doctest::Approx(3.0));
  CHECK(p.coeff.gamma1 == doctest::Approx(5.0));
  CHECK(p.coeff.gamma2 == doctest::Approx(2.0));

  // v = (1+3i)(t+1)^2 x(1-x) y(1-y)
  const Complex v = eval_exact(p, 'v', {0.5, 0.5, 0.0}, 1.0).first;
  CHECK(std::abs(v - Complex(1.0, 3.0) * 4.0 * 0.0625) <= 1e-14);
}

TEST_CASE("Example 3 spot values") {
  const GlProblem p = make_example(3);
  CHECK(p.dim == 3);
  // sin(pi z) factor vanishes at z = 0
  CHECK(std::abs(eval_exact(p, 'u', {0.4, 0.7, 0.0}, 0.3).first) <= 1e-15);
  CHECK(std::abs(p.initial_u.value({0.5, 0.5, 0.5}).imag() - 1.0) <= 1e-14);
}

TEST_CASE("exact solutions vanish on the boundary") {
  std::mt19937 rng(41);
  for (int id : {1, 2, 3}) {
    const GlProblem p = make_example(id);
    for (int trial = 0; trial < 100; ++trial) {
      const Vec x = random_boundary_point(rng, p.dim);
      CHECK(std::abs(eval_exact(p, 'u', x, 0.37).first) <= 1e-14);
      CHECK(std::abs(eval_exact(p, 'v', x, 0.37).first) <= 1e-14);
      CHECK(std::abs(p.initial_u.value(x)) <= 1e-14);
      CHECK(std::abs(p.initial_v.value(x)) <= 1e-14);
    }
  }
}

TEST_CASE("exact solutions equal the initial data at t = 0") {
  std::mt19937 rng(43);
  for (int id : {1, 2, 3}) {
    const GlProblem p = make_example(id);
    for (int trial = 0; trial < 50; ++trial) {
      const Vec x = random_interior_point(rng, p.dim, 0.0);
      CHECK(std::abs(eval_exact(p, 'u', x, 0.0).first -
                     p.initial_u.value(x)) <= 1e-14);
      CHECK(std::abs(eval_exact(p, 'v', x, 0.0).first -
                     p.initial_v.value(x)) <= 1e-14);
    }
  }
}

TEST_CASE("nonlinearities are non-negative on [0, 100]") {
  for (int id : {1, 2, 3}) {
    const GlProblem p = make_example(id);
    for (int i = 0; i <= 100; ++i) {
      const double s = static_cast<double>(i);
      CHECK(p.nl.f1(s) >= 0.0);
      CHECK(p.nl.f2(s) >= 0.0);
      CHECK(p.nl.g1(s) >= 0.0);
      CHECK(p.nl.g2(s) >= 0.0);
    }
  }
}

TEST_CASE("finite-difference residual oracle for all manufactured sources") {
  std::mt19937 rng(47);
  for (int id : {1, 2, 3}) {
    const GlProblem p = make_example(id);
    double worst = 0.0;
    for (int trial = 0; trial < 200; ++trial) {
      const Vec x = random_interior_point(rng, p.dim, 0.05);
      std::uniform_real_distribution<double> tdist(0.05, 0.95);
      const double t = tdist(rng);
      for (int which : {1, 2}) {
        const Complex want = fd_source_oracle(p, which, x, t);
        const Complex got = eval_source(p, which, x, t);
        worst = std::max(worst, std::abs(want - got));
      }
    }
    CHECK(worst <= 1e-6);
  }
}

TEST_CASE("Example 1 source at the center by explicit substitution") {
  const GlProblem p = make_example(1);
  const Complex i(0.0, 1.0);
  // u = i exp(it) S with S(0.5,0.5)=1: at t=0, u=i, u_t=-1, Lap u = -2pi^2 i
  const double qq = std::sin(0.5) * 0.5;
  const double v2 = qq * qq * qq * qq;  // |v0(0.5,0.5)|^2
  const Complex expected = Complex(-1.0) -
                           Complex(1.0, 1.0) * (-2.0 * M_PI * M_PI * i) +
                           Complex(1.0, 1.0) * (1.0 + v2) * i - i;
  CHECK(std::abs(eval_source(p, 1, {0.5, 0.5, 0.0}, 0.0) - expected) <= 1e-12);
}

TEST_CASE("sources are generally nonzero on the boundary") {
  const GlProblem p = make_example(1);
  // u and v vanish there but Lap u does not
  CHECK(std::abs(eval_source(p, 1, {0.0, 0.5, 0.0}, 0.2)) > 1e-3);
}

TEST_CASE("queries and validation errors") {
  CHECK_THROWS_AS(make_example(0), std::invalid_argument);
  CHECK_THROWS_AS(make_example(4), std::invalid_argument);

  GlProblem bare;
  bare.dim = 2;
  CHECK_THROWS_AS(eval_exact(bare, 'u', {0.5, 0.5, 0.0}, 0.0),
                  UnsupportedQuery);
  CHECK_THROWS_AS(eval_source(bare, 1, {0.5, 0.5, 0.0}, 0.0),
                  UnsupportedQuery);
  CHECK_THROWS_AS(eval_exact(make_example(1), 'w', {0.5, 0.5, 0.0}, 0.0),
                  std::invalid_argument);

  GlCoefficients bad;
  bad.nu1 = 0.0;
  CHECK_THROWS_AS(check_coefficients(bad), std::invalid_argument);
}

TEST_CASE("separable source evaluation matches term summation") {
  const GlProblem p = make_example(2);
  const Vec x{0.3, 0.6, 0.0};
  const double t = 0.4;
  Complex sum = 0.0;
  for (const SourceTerm& term : *p.source_u)
    sum += term.time_factor(t) * term.space_factor(x);
  CHECK(std::abs(sum - eval_source(p, 1, x, t)) <= 1e-15);
}

// Copyright gldln developers. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#ifndef GLDLN_PROBLEMS_HPP
#define GLDLN_PROBLEMS_HPP

#include <functional>
#include <optional>
#include <utility>
#include <vector>

#include "gldln/types.hpp"

namespace gldln {

/// Constant coefficients of the coupled system
///   u_t - (nu1 + i alpha1) Lap u
///       + ((kappa1 + i beta1) f1(|u|^2) + (mu1 + i delta1) g1(|v|^2)) u
///       - gamma1 u = s1,
/// and symmetrically for v with index 2. nu, kappa, mu must be positive.
struct GlCoefficients {
  double nu1 = 1.0, nu2 = 1.0;
  double alpha1 = 0.0, alpha2 = 0.0;
  double kappa1 = 1.0, kappa2 = 1.0;
  double beta1 = 0.0, beta2 = 0.0;
  double mu1 = 1.0, mu2 = 1.0;
  double delta1 = 0.0, delta2 = 0.0;
  double gamma1 = 0.0, gamma2 = 0.0;
};

/// Non-negative, continuously differentiable scalar nonlinearities on [0,inf).
struct Nonlinearity {
  std::function<double(double)> f1, f2, g1, g2;
};

/// One term of a source written as a separable sum  s(x,t) = sum_j T_j(t) X_j(x).
/// The split lets the driver precompute one load vector per term and rebuild
/// the load at any time level from a handful of scalars.
struct SourceTerm {
  std::function<Complex(double)> time_factor;
  std::function<Complex(const Vec&)> space_factor;
};

using SeparableSource = std::vector<SourceTerm>;

Complex eval_separable(const SeparableSource& source, const Vec& x, double t);

/// Problem data: coefficients, nonlinearities, initial data, and (for
/// manufactured cases) exact solutions plus source terms.
struct GlProblem {
  int dim = 2;
  GlCoefficients coeff;
  Nonlinearity nl;
  ScalarField initial_u, initial_v;
  std::optional<SpaceTimeField> exact_u, exact_v;
  std::optional<SeparableSource> source_u, source_v;
};

/// The three manufactured verification cases (two 2D, one 3D), with exact
/// solutions and symbolically derived sources.
GlProblem make_example(int id);

std::pair<Complex, CVec> eval_exact(const GlProblem& problem, char which,
                                    const Vec& x, double t);

Complex eval_source(const GlProblem& problem, int which, const Vec& x, double t);

/// Throws invalid_argument when a positivity constraint is violated.
void check_coefficients(const GlCoefficients& coeff);

}  // namespace gldln

#endif  // GLDLN_PROBLEMS_HPP

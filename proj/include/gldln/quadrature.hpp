// Copyright gldln developers. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#ifndef GLDLN_QUADRATURE_HPP
#define GLDLN_QUADRATURE_HPP

#include <vector>

#include "gldln/types.hpp"

namespace gldln {

/// Quadrature rule on the reference simplex (unit triangle or unit
/// tetrahedron). Weights are positive and sum to the reference measure
/// (1/2 resp. 1/6). Immutable after construction.
struct QuadRule {
  int dim = 0;
  int exact_degree = 0;
  std::vector<Vec> points;      // reference coordinates
  std::vector<double> weights;

  int size() const { return static_cast<int>(points.size()); }
};

/// Conical-product Gauss rule exact for all polynomials of total degree
/// <= required_degree. Supported up to degree 10.
QuadRule quadrature_rule(int dim, int required_degree);

}  // namespace gldln

#endif  // GLDLN_QUADRATURE_HPP

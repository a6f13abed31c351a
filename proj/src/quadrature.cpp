// Copyright gldln developers. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#include "gldln/quadrature.hpp"

#include <cmath>
#include <stdexcept>

namespace gldln {

namespace {

struct Gauss1d {
  std::vector<double> x;  // nodes on [0,1]
  std::vector<double> w;  // weights summing to 1
};

// Gauss-Legendre nodes/weights on [-1,1], mapped to [0,1].
Gauss1d gauss_legendre_01(int m) {
  static const double x2 = 0.57735026918962576451;
  static const double x3 = 0.77459666924148337704;
  static const double x4a = 0.33998104358485626480, x4b = 0.86113631159405257522;
  static const double w4a = 0.65214515486254614263, w4b = 0.34785484513745385737;
  static const double x5a = 0.53846931010568309104, x5b = 0.90617984593866399280;
  static const double w5c = 0.56888888888888888889, w5a = 0.47862867049936646804,
                      w5b = 0.23692688505618908751;
  static const double x6a = 0.23861918608319690863, x6b = 0.66120938646626451366,
                      x6c = 0.93246951420315202781;
  static const double w6a = 0.46791393457269104739, w6b = 0.36076157304813860757,
                      w6c = 0.17132449237917034504;
  static const double x7a = 0.40584515137739716691, x7b = 0.74153118559939443986,
                      x7c = 0.94910791234275852453;
  static const double w7d = 0.41795918367346938776, w7a = 0.38183005050511894495,
                      w7b = 0.27970539148927666790, w7c = 0.12948496616886969327;

  std::vector<double> xs, ws;
  switch (m) {
    case 1:
      xs = {0.0};
      ws = {2.0};
      break;
    case 2:
      xs = {-x2, x2};
      ws = {1.0, 1.0};
      break;
    case 3:
      xs = {-x3, 0.0, x3};
      ws = {5.0 / 9.0, 8.0 / 9.0, 5.0 / 9.0};
      break;
    case 4:
      xs = {-x4b, -x4a, x4a, x4b};
      ws = {w4b, w4a, w4a, w4b};
      break;
    case 5:
      xs = {-x5b, -x5a, 0.0, x5a, x5b};
      ws = {w5b, w5a, w5c, w5a, w5b};
      break;
    case 6:
      xs = {-x6c, -x6b, -x6a, x6a, x6b, x6c};
      ws = {w6c, w6b, w6a, w6a, w6b, w6c};
      break;
    case 7:
      xs = {-x7c, -x7b, -x7a, 0.0, x7a, x7b, x7c};
      ws = {w7c, w7b, w7a, w7d, w7a, w7b, w7c};
      break;
    default:
      throw UnsupportedDegree("gauss_legendre_01: unsupported point count");
  }
  Gauss1d rule;
  rule.x.resize(m);
  rule.w.resize(m);
  for (int i = 0; i < m; ++i) {
    rule.x[i] = 0.5 * (xs[i] + 1.0);
    rule.w[i] = 0.5 * ws[i];
  }
  return rule;
}

int points_for(int degree) { return (degree + 2) / 2; }  // ceil((degree+1)/2)

}  // namespace

QuadRule quadrature_rule(int dim, int required_degree) {
  if (dim != 2 && dim != 3)
    throw std::invalid_argument("quadrature_rule: dim must be 2 or 3");
  if (required_degree < 0 || required_degree > 10)
    throw UnsupportedDegree("quadrature_rule: degree above supported table");

  const int p = required_degree;
  QuadRule rule;
  rule.dim = dim;
  rule.exact_degree = p;

  if (dim == 2) {
    // Collapsed square: x = u(1-v), y = v, Jacobian (1-v). The v-integrand
    // picks up one extra degree from the Jacobian.
    const Gauss1d gu = gauss_legendre_01(points_for(p));
    const Gauss1d gv = gauss_legendre_01(points_for(p + 1));
    for (std::size_t j = 0; j < gv.x.size(); ++j) {
      const double v = gv.x[j];
      for (std::size_t i = 0; i < gu.x.size(); ++i) {
        rule.points.push_back({gu.x[i] * (1.0 - v), v, 0.0});
        rule.weights.push_back(gu.w[i] * gv.w[j] * (1.0 - v));
      }
    }
  } else {
    // x = u(1-v)(1-w), y = v(1-w), z = w, Jacobian (1-v)(1-w)^2.
    const Gauss1d gu = gauss_legendre_01(points_for(p));
    const Gauss1d gv = gauss_legendre_01(points_for(p + 1));
    const Gauss1d gw = gauss_legendre_01(points_for(p + 2));
    for (std::size_t k = 0; k < gw.x.size(); ++k) {
      const double w = gw.x[k];
      for (std::size_t j = 0; j < gv.x.size(); ++j) {
        const double v = gv.x[j];
        for (std::size_t i = 0; i < gu.x.size(); ++i) {
          rule.points.push_back(
              {gu.x[i] * (1.0 - v) * (1.0 - w), v * (1.0 - w), w});
          rule.weights.push_back(gu.w[i] * gv.w[j] * gw.w[k] * (1.0 - v) *
                                 (1.0 - w) * (1.0 - w));
        }
      }
    }
  }
  return rule;
}

}  // namespace gldln

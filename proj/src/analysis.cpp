// Copyright gldln developers. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#include "gldln/analysis.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace gldln {

std::pair<double, double> error_norms(const FeSpace& space,
                                      const DofVector& u_h,
                                      const SpaceTimeField& exact, double t) {
  if (static_cast<int>(u_h.size()) != space.n_dofs())
    throw DimensionMismatch("error_norms: coefficient length mismatch");

  const int k = space.degree;
  const int dim = space.mesh.dim;
  const QuadRule rule = quadrature_rule(dim, std::min(10, 2 * k + 4));
  const BasisTable table = tabulate_basis(k, dim, rule);
  const int nl = table.n_local;

  double e0 = 0.0, e1 = 0.0;
  for (int c = 0; c < space.mesh.n_cells(); ++c) {
    const CellGeometry geom = cell_geometry(space.mesh, c);
    Complex coeffs[20];
    for (int a = 0; a < nl; ++a) coeffs[a] = u_h[space.cell_dof(c, a)];
    for (int q = 0; q < table.n_points; ++q) {
      const double w = rule.weights[q] * geom.det;
      const double* phi = &table.values[q * nl];

      Complex val = 0.0;
      CVec ref_grad{0.0, 0.0, 0.0};
      for (int a = 0; a < nl; ++a) {
        val += coeffs[a] * phi[a];
        const Vec& g = table.grad(q, a);
        for (int d = 0; d < dim; ++d) ref_grad[d] += coeffs[a] * g[d];
      }
      CVec grad{0.0, 0.0, 0.0};
      for (int cc = 0; cc < dim; ++cc)
        for (int l = 0; l < dim; ++l)
          grad[cc] += geom.jacobian_inv[l][cc] * ref_grad[l];

      const Vec x = map_to_physical(geom, rule.points[q]);
      const Complex ex = exact.value(x, t);
      const CVec eg = exact.gradient(x, t);

      e0 += w * std::norm(val - ex);
      for (int d = 0; d < dim; ++d) e1 += w * std::norm(grad[d] - eg[d]);
    }
  }
  return {std::sqrt(e0), std::sqrt(e1)};
}

std::vector<double> convergence_order(std::span<const double> errors,
                                      std::span<const double> params) {
  if (errors.size() != params.size() || errors.size() < 2)
    throw std::invalid_argument(
        "convergence_order: need equal-length sequences of size >= 2");
  const double nan = std::numeric_limits<double>::quiet_NaN();
  std::vector<double> orders;
  for (std::size_t i = 1; i < errors.size(); ++i) {
    if (!(errors[i - 1] > 0.0) || !(errors[i] > 0.0) || !(params[i] > 0.0) ||
        !(params[i - 1] > 0.0)) {
      orders.push_back(nan);
      continue;
    }
    orders.push_back(std::log(errors[i - 1] / errors[i]) /
                     std::log(params[i - 1] / params[i]));
  }
  return orders;
}

namespace {

double msq(const ComplexCsr& m, const DofVector& x) {
  const double n = m_norm(m, x);
  return n * n;
}

DofVector hat_level(double theta, const DofVector& vn, const DofVector& vn1,
                    const DofVector& vn2) {
  const double w0 = (2.0 + theta - theta * theta) / 4.0;
  const double w1 = theta * theta / 2.0;
  const double w2 = (2.0 - theta - theta * theta) / 4.0;
  DofVector out(vn.size());
  for (std::size_t i = 0; i < vn.size(); ++i)
    out[i] = w0 * vn[i] + w1 * vn1[i] + w2 * vn2[i];
  return out;
}

}  // namespace

GIdentityResult check_g_stability_identity(double theta, double tau,
                                           const DofVector& v0,
                                           const DofVector& v1,
                                           const DofVector& v2,
                                           const ComplexCsr& mass) {
  if (!(theta >= 0.0 && theta <= 1.0) || !(tau > 0.0))
    throw std::invalid_argument("check_g_stability_identity: bad theta or tau");

  const double d0 = (1.0 + theta) / (2.0 * tau);
  const double d1 = -theta / tau;
  const double d2 = (theta - 1.0) / (2.0 * tau);
  DofVector dtau(v2.size()), diff2(v2.size());
  for (std::size_t i = 0; i < v2.size(); ++i) {
    dtau[i] = d0 * v2[i] + d1 * v1[i] + d2 * v0[i];
    diff2[i] = v2[i] - 2.0 * v1[i] + v0[i];
  }
  const DofVector hat = hat_level(theta, v2, v1, v0);

  const double lhs = std::real(m_inner_product(mass, dtau, hat));

  const double g_new = (1.0 + theta) * msq(mass, v2) + (1.0 - theta) * msq(mass, v1);
  const double g_old = (1.0 + theta) * msq(mass, v1) + (1.0 - theta) * msq(mass, v0);
  const double rhs = (g_new - g_old) / (4.0 * tau) +
                     theta * (1.0 - theta * theta) / (8.0 * tau) * msq(mass, diff2);

  return {lhs, rhs, std::abs(lhs - rhs)};
}

TransferResult check_transfer_inequality(double theta,
                                         std::span<const DofVector> sequence,
                                         const ComplexCsr& mass) {
  if (!(theta >= 0.0 && theta <= 1.0))
    throw std::invalid_argument("check_transfer_inequality: bad theta");
  if (sequence.size() < 2)
    throw std::invalid_argument("check_transfer_inequality: need >= 2 levels");

  const double v0_norm = m_norm(mass, sequence[0]);
  double hat_sum = 0.0;
  double min_slack = std::numeric_limits<double>::infinity();

  for (std::size_t n = 1; n < sequence.size(); ++n) {
    if (n == 1) {
      DofVector hat1(sequence[0].size());
      for (std::size_t i = 0; i < hat1.size(); ++i)
        hat1[i] = 0.5 * (sequence[1][i] + sequence[0][i]);
      hat_sum += m_norm(mass, hat1);
    } else {
      hat_sum += m_norm(
          mass, hat_level(theta, sequence[n], sequence[n - 1], sequence[n - 2]));
    }
    const double slack = 2.0 * hat_sum + v0_norm - m_norm(mass, sequence[n]);
    min_slack = std::min(min_slack, slack);
  }
  return {min_slack >= -1e-12, min_slack};
}

}  // namespace gldln

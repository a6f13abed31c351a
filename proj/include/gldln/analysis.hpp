// Copyright gldln developers. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#ifndef GLDLN_ANALYSIS_HPP
#define GLDLN_ANALYSIS_HPP

#include <span>
#include <utility>
#include <vector>

#include "gldln/fespace.hpp"
#include "gldln/linalg.hpp"

namespace gldln {

/// Final-time errors E0 = ||w - w_h|| and E1 = ||grad(w - w_h)|| per field.
struct ErrorReport {
  double E0_u = 0.0, E1_u = 0.0;
  double E0_v = 0.0, E1_v = 0.0;
};

struct RateRow {
  int n = 0;          // sweep parameter is 1/n (mesh size or time step)
  double param = 0.0;
  double E1_u = 0.0, E0_u = 0.0, E1_v = 0.0, E0_v = 0.0;
  // successive orders; NaN marks the first row / undefined entries
  double ord1_u = 0.0, ord0_u = 0.0, ord1_v = 0.0, ord0_v = 0.0;
};

struct RateTable {
  char param_name = 'h';  // 'h' or 't' (tau)
  std::vector<RateRow> rows;
};

/// L2 and H1-seminorm errors of an FE function against an exact field at
/// time t, integrated with the error rule (degree 2k+4 unless overridden).
std::pair<double, double> error_norms(const FeSpace& space,
                                      const DofVector& u_h,
                                      const SpaceTimeField& exact, double t,
                                      int rule_degree = -1);

/// Successive log-ratio orders; entries with nonpositive errors yield NaN.
std::vector<double> convergence_order(std::span<const double> errors,
                                      std::span<const double> params);

/// Both sides of the G-stability identity for the M-weighted inner product.
struct GIdentityResult {
  double lhs = 0.0;
  double rhs = 0.0;
  double diff = 0.0;
};

GIdentityResult check_g_stability_identity(double theta, double tau,
                                           const DofVector& v0,
                                           const DofVector& v1,
                                           const DofVector& v2,
                                           const ComplexCsr& mass);

/// ||v^n|| <= 2 sum_{k<=n} ||hat v^k|| + ||v^0|| for every n; returns the
/// minimum slack over n (negative slack means a violation).
struct TransferResult {
  bool ok = false;
  double min_slack = 0.0;
};

TransferResult check_transfer_inequality(double theta,
                                         std::span<const DofVector> sequence,
                                         const ComplexCsr& mass);

}  // namespace gldln

#endif  // GLDLN_ANALYSIS_HPP

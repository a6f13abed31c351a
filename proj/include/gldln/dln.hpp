// Copyright gldln developers. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#ifndef GLDLN_DLN_HPP
#define GLDLN_DLN_HPP

#include <array>
#include <memory>
#include <utility>
#include <vector>

#include "gldln/assembly.hpp"
#include "gldln/fespace.hpp"
#include "gldln/linalg.hpp"
#include "gldln/problems.hpp"

namespace gldln {

/// Coefficients of the one-leg two-step family for parameter theta in [0,1].
/// d multiplies (u^n, u^{n-1}, u^{n-2}) in the difference quotient, w_hat in
/// the averaged state, and w_tilde extrapolates (u^{n-1}, u^{n-2}). All three
/// stencils target time t_{n-1+theta/2}.
struct DlnWeights {
  double theta = 0.0;
  double tau = 0.0;
  std::array<double, 3> d{};
  std::array<double, 3> w_hat{};
  std::array<double, 2> w_tilde{};
};

DlnWeights dln_weights(double theta, double tau);

struct DlnConfig {
  double theta = 0.5;
  double tau = 0.0;
  double T = 0.0;
  int N = 0;          // T / tau
  double tol = 1e-10;
};

/// Validating constructor for DlnConfig: theta in [0,1], N tau = T within
/// 1e-12, N >= 2. Throws ConfigurationError.
DlnConfig make_config(double theta, double tau, double T, double tol = 1e-10);

/// Rolling two-level state of the scheme. `n` is the most recently computed
/// level: u_prev = u_h^n, u_prev2 = u_h^{n-1}, t = n tau. All vectors vanish
/// on boundary DOFs.
struct SchemeState {
  int n = 0;
  double t = 0.0;
  DofVector u_prev, u_prev2, v_prev, v_prev2;
};

struct SimulationResult {
  DofVector u, v;                        // final level N
  std::vector<double> u_norms, v_norms;  // L2 norms at levels 0..N
};

/// Drives the scheme on a fixed space: assembles the constant matrices once,
/// rebuilds the frozen-coefficient weighted mass every step, and reuses one
/// sparse factorization object over the fixed interior pattern.
class GlStepper {
 public:
  /// When mass/stiffness are supplied they must match the space's pattern;
  /// otherwise they are assembled here.
  GlStepper(const GlProblem& problem, const FeSpace& space,
            const DlnConfig& config, const ComplexCsr* mass = nullptr,
            const ComplexCsr* stiffness = nullptr);
  ~GlStepper();
  GlStepper(GlStepper&&) noexcept;

  ComplexCsr mass_csr() const;
  ComplexCsr stiffness_csr() const;

  /// Ritz projections of the initial data.
  std::pair<DofVector, DofVector> ritz_initial();

  /// Linearized Crank-Nicolson start: coefficients frozen at the Taylor
  /// predictors u^{1/2}, v^{1/2} built from the PDE's t-derivative at 0.
  SchemeState cn_start(const DofVector& u0h, const DofVector& v0h);

  /// One DLN step with the load vectors taken at t_{n-1+theta/2}.
  void advance(SchemeState& state);
  void advance_with_loads(SchemeState& state, const DofVector& b_u,
                          const DofVector& b_v);

  /// Load vector of equation `which` (1 or 2) at time t, combined from the
  /// per-term precomputed vectors of the separable source.
  DofVector load_at(int which, double t) const;

  double l2_norm_of(const DofVector& coeffs) const;  // M-weighted norm

  SimulationResult run();

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

// Spec-level single-call forms (each builds a stepper internally).

SchemeState start_step_cn(const GlProblem& problem, const FeSpace& space,
                          const ComplexCsr& mass, const ComplexCsr& stiffness,
                          const DlnConfig& config);

SchemeState dln_step(const SchemeState& state, const GlProblem& problem,
                     const FeSpace& space, const ComplexCsr& mass,
                     const ComplexCsr& stiffness, const DlnWeights& weights,
                     const DofVector& b_u, const DofVector& b_v,
                     double tol = 1e-10);

/// Full pipeline: structured mesh with n subdivisions, degree-k space, Ritz
/// initialization, CN start, then N-1 DLN steps.
SimulationResult run_simulation(const GlProblem& problem,
                                const DlnConfig& config, int n, int k);

}  // namespace gldln

#endif  // GLDLN_DLN_HPP

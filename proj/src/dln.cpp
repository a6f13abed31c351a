// Copyright gldln developers. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#include "gldln/dln.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "gldln/mesh.hpp"
#include "gldln/projection.hpp"

namespace gldln {

DlnWeights dln_weights(double theta, double tau) {
  if (!(theta >= 0.0 && theta <= 1.0))
    throw std::invalid_argument("dln_weights: theta must lie in [0,1]");
  if (!(tau > 0.0))
    throw std::invalid_argument("dln_weights: tau must be positive");
  DlnWeights w;
  w.theta = theta;
  w.tau = tau;
  w.d = {(1.0 + theta) / (2.0 * tau), -theta / tau, (theta - 1.0) / (2.0 * tau)};
  w.w_hat = {(2.0 + theta - theta * theta) / 4.0, theta * theta / 2.0,
             (2.0 - theta - theta * theta) / 4.0};
  w.w_tilde = {1.0 + theta / 2.0, -theta / 2.0};
  return w;
}

DlnConfig make_config(double theta, double tau, double T, double tol) {
  if (!(theta >= 0.0 && theta <= 1.0))
    throw ConfigurationError("config: theta must lie in [0,1]");
  if (!(tau > 0.0)) throw ConfigurationError("config: tau must be positive");
  if (!(T > 0.0)) throw ConfigurationError("config: T must be positive");
  if (!(tol > 0.0)) throw ConfigurationError("config: tol must be positive");
  const int N = static_cast<int>(std::llround(T / tau));
  if (N < 2) throw ConfigurationError("config: need at least 2 time steps");
  if (std::abs(N * tau - T) > 1e-12 * std::max(1.0, T))
    throw ConfigurationError("config: T must be an integer multiple of tau");
  return {theta, tau, T, N, tol};
}

namespace {

DofVector matvec_vals(const ComplexCsr& pattern, std::span<const Complex> vals,
                      const DofVector& x) {
  DofVector y(pattern.n_rows, Complex(0.0));
  for (int r = 0; r < pattern.n_rows; ++r) {
    Complex s = 0.0;
    for (int idx = pattern.row_offsets[r]; idx < pattern.row_offsets[r + 1]; ++idx)
      s += vals[idx] * x[pattern.col_indices[idx]];
    y[r] = s;
  }
  return y;
}

void check_same_pattern(const ComplexCsr& a, const ComplexCsr& b,
                        const char* what) {
  if (a.n_rows != b.n_rows || a.row_offsets != b.row_offsets ||
      a.col_indices != b.col_indices)
    throw std::invalid_argument(std::string(what) +
                                ": operator pattern does not match the space");
}

}  // namespace

struct GlStepper::Impl {
  GlProblem problem;
  FeSpace space;
  DlnConfig config;
  DlnWeights weights;

  FePattern pattern;
  std::vector<double> cell_dets;
  QuadRule wrule;    // nonlinear-coefficient / source rule, degree 2k+2
  BasisTable wtable;
  std::vector<Complex> m_vals, a_vals;

  ComplexCsr reduced;        // interior pattern
  std::vector<int> nnz_map;  // full nnz -> reduced nnz, -1 dropped
  std::unique_ptr<CsrSolver> solver;

  std::vector<DofVector> load_u_terms, load_v_terms;
  double init_norm_sum = -1.0;

  // per-step scratch
  std::vector<double> s_u, s_v;  // |extrapolated field|^2 at (cell, q)
  std::vector<Complex> w_vals, k_vals, sys_vals, red_vals;
  DofVector tilde_u, tilde_v;

  Impl(const GlProblem& prob, const FeSpace& sp, const DlnConfig& cfg)
      : problem(prob), space(sp), config(cfg),
        weights(dln_weights(cfg.theta, cfg.tau)) {
    if (problem.dim != space.mesh.dim)
      throw DimensionMismatch("GlStepper: problem/space dimension mismatch");

    pattern = build_pattern(space);
    cell_dets = compute_cell_dets(space);
    wrule = quadrature_rule(space.mesh.dim, 2 * space.degree + 2);
    wtable = tabulate_basis(space.degree, space.mesh.dim, wrule);

    const std::size_t nnz = pattern.csr.values.size();
    m_vals.resize(nnz);
    a_vals.resize(nnz);
    fill_mass_values(space, pattern, m_vals);
    fill_stiffness_values(space, pattern, a_vals);

    reduced = restrict_to_interior(pattern.csr, space);
    nnz_map = interior_nnz_map(pattern.csr, space);
    solver = std::make_unique<CsrSolver>(reduced);

    if (problem.source_u)
      for (const SourceTerm& term : *problem.source_u)
        load_u_terms.push_back(assemble_load(
            space, [&](const Vec& x, double) { return term.space_factor(x); },
            0.0));
    if (problem.source_v)
      for (const SourceTerm& term : *problem.source_v)
        load_v_terms.push_back(assemble_load(
            space, [&](const Vec& x, double) { return term.space_factor(x); },
            0.0));

    const std::size_t n_qp_total =
        static_cast<std::size_t>(space.mesh.n_cells()) * wrule.size();
    s_u.resize(n_qp_total);
    s_v.resize(n_qp_total);
    w_vals.resize(nnz);
    k_vals.resize(nnz);
    sys_vals.resize(nnz);
    red_vals.resize(reduced.values.size());
  }

  ComplexCsr csr_with(const std::vector<Complex>& vals) const {
    ComplexCsr out = pattern.csr;
    out.values = vals;
    return out;
  }

  double mnorm(const DofVector& x) const {
    const DofVector mx = matvec_vals(pattern.csr, m_vals, x);
    double s = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i)
      s += std::real(std::conj(x[i]) * mx[i]);
    return std::sqrt(std::max(0.0, s));
  }

  // |u_h(c,q)|^2, |v_h(c,q)|^2 for FE coefficient vectors.
  void squared_moduli_at_qp(const DofVector& u, const DofVector& v) {
    const int nl = wtable.n_local;
    const int nq = wtable.n_points;
    Complex cu[20], cv[20];
    for (int c = 0; c < space.mesh.n_cells(); ++c) {
      for (int a = 0; a < nl; ++a) {
        const int dof = space.cell_dof(c, a);
        cu[a] = u[dof];
        cv[a] = v[dof];
      }
      const std::size_t base = static_cast<std::size_t>(c) * nq;
      for (int q = 0; q < nq; ++q) {
        const double* phi = &wtable.values[q * nl];
        Complex vu = 0.0, vv = 0.0;
        for (int a = 0; a < nl; ++a) {
          vu += cu[a] * phi[a];
          vv += cv[a] * phi[a];
        }
        s_u[base + q] = std::norm(vu);
        s_v[base + q] = std::norm(vv);
      }
    }
  }

  // Taylor predictors |u^{1/2}|^2, |v^{1/2}|^2 at quadrature points, with the
  // time derivative at t=0 taken from the PDE (analytic Laplacian route).
  void predictor_moduli_analytic() {
    const GlCoefficients& co = problem.coeff;
    const Complex cnu1(co.nu1, co.alpha1), cnu2(co.nu2, co.alpha2);
    const Complex cf1(co.kappa1, co.beta1), cf2(co.kappa2, co.beta2);
    const Complex cg1(co.mu1, co.delta1), cg2(co.mu2, co.delta2);
    const double half_tau = 0.5 * config.tau;
    const int nq = wtable.n_points;

    for (int c = 0; c < space.mesh.n_cells(); ++c) {
      const CellGeometry geom = cell_geometry(space.mesh, c);
      const std::size_t base = static_cast<std::size_t>(c) * nq;
      for (int q = 0; q < nq; ++q) {
        const Vec x = map_to_physical(geom, wrule.points[q]);
        const Complex au = problem.initial_u.value(x);
        const Complex av = problem.initial_v.value(x);
        const Complex lu = problem.initial_u.laplacian(x);
        const Complex lv = problem.initial_v.laplacian(x);
        const double su0 = std::norm(au), sv0 = std::norm(av);
        Complex ut0 = cnu1 * lu -
                      (cf1 * problem.nl.f1(su0) + cg1 * problem.nl.g1(sv0)) * au +
                      co.gamma1 * au;
        Complex vt0 = cnu2 * lv -
                      (cf2 * problem.nl.f2(su0) + cg2 * problem.nl.g2(sv0)) * av +
                      co.gamma2 * av;
        if (problem.source_u) ut0 += eval_separable(*problem.source_u, x, 0.0);
        if (problem.source_v) vt0 += eval_separable(*problem.source_v, x, 0.0);
        s_u[base + q] = std::norm(au + half_tau * ut0);
        s_v[base + q] = std::norm(av + half_tau * vt0);
      }
    }
  }

  // Fallback predictors from the discrete Laplacian of the projected data.
  void predictor_moduli_discrete(const DofVector& u0h, const DofVector& v0h) {
    const ComplexCsr m = csr_with(m_vals);
    const ComplexCsr a = csr_with(a_vals);
    const DofVector lap_u = discrete_laplacian(space, m, a, u0h, config.tol);
    const DofVector lap_v = discrete_laplacian(space, m, a, v0h, config.tol);

    const GlCoefficients& co = problem.coeff;
    const Complex cnu1(co.nu1, co.alpha1), cnu2(co.nu2, co.alpha2);
    const Complex cf1(co.kappa1, co.beta1), cf2(co.kappa2, co.beta2);
    const Complex cg1(co.mu1, co.delta1), cg2(co.mu2, co.delta2);
    const double half_tau = 0.5 * config.tau;
    const int nl = wtable.n_local;
    const int nq = wtable.n_points;

    for (int c = 0; c < space.mesh.n_cells(); ++c) {
      const CellGeometry geom = cell_geometry(space.mesh, c);
      const std::size_t base = static_cast<std::size_t>(c) * nq;
      for (int q = 0; q < nq; ++q) {
        const double* phi = &wtable.values[q * nl];
        Complex au = 0.0, av = 0.0, lu = 0.0, lv = 0.0;
        for (int a2 = 0; a2 < nl; ++a2) {
          const int dof = space.cell_dof(c, a2);
          au += u0h[dof] * phi[a2];
          av += v0h[dof] * phi[a2];
          lu += lap_u[dof] * phi[a2];
          lv += lap_v[dof] * phi[a2];
        }
        const double su0 = std::norm(au), sv0 = std::norm(av);
        Complex ut0 = cnu1 * lu -
                      (cf1 * problem.nl.f1(su0) + cg1 * problem.nl.g1(sv0)) * au +
                      co.gamma1 * au;
        Complex vt0 = cnu2 * lv -
                      (cf2 * problem.nl.f2(su0) + cg2 * problem.nl.g2(sv0)) * av +
                      co.gamma2 * av;
        const Vec x = map_to_physical(geom, wrule.points[q]);
        if (problem.source_u) ut0 += eval_separable(*problem.source_u, x, 0.0);
        if (problem.source_v) vt0 += eval_separable(*problem.source_v, x, 0.0);
        s_u[base + q] = std::norm(au + half_tau * ut0);
        s_v[base + q] = std::norm(av + half_tau * vt0);
      }
    }
  }

  // W for one equation from the frozen moduli arrays.
  void fill_weighted(int which) {
    const GlCoefficients& co = problem.coeff;
    const Complex cf = which == 1 ? Complex(co.kappa1, co.beta1)
                                  : Complex(co.kappa2, co.beta2);
    const Complex cg =
        which == 1 ? Complex(co.mu1, co.delta1) : Complex(co.mu2, co.delta2);
    const auto& f = which == 1 ? problem.nl.f1 : problem.nl.f2;
    const auto& g = which == 1 ? problem.nl.g1 : problem.nl.g2;
    const int nq = wtable.n_points;
    fill_weighted_mass_values(
        space, pattern, wrule, wtable,
        [&](int cell, int q) -> Complex {
          const std::size_t i = static_cast<std::size_t>(cell) * nq + q;
          const double fv = f(s_u[i]);
          const double gv = g(s_v[i]);
          if (std::isnan(fv) || std::isnan(gv))
            throw InvalidWeight("dln: nonlinearity returned NaN");
          return cf * fv + cg * gv;
        },
        w_vals, cell_dets);
  }

  // K = (nu + i alpha) A + W - gamma M for one equation.
  void build_k(int which) {
    const GlCoefficients& co = problem.coeff;
    const Complex cnu = which == 1 ? Complex(co.nu1, co.alpha1)
                                   : Complex(co.nu2, co.alpha2);
    const double gamma = which == 1 ? co.gamma1 : co.gamma2;
    for (std::size_t i = 0; i < k_vals.size(); ++i)
      k_vals[i] = cnu * a_vals[i] + w_vals[i] - gamma * m_vals[i];
  }

  DofVector solve_system(double d_new, double w_new, const DofVector& rhs_full,
                         int step_index) {
    for (std::size_t i = 0; i < sys_vals.size(); ++i)
      sys_vals[i] = d_new * m_vals[i] + w_new * k_vals[i];
    for (std::size_t i = 0; i < sys_vals.size(); ++i)
      if (nnz_map[i] >= 0) red_vals[nnz_map[i]] = sys_vals[i];

    DofVector x_int;
    try {
      solver->factorize(red_vals);
      x_int = solver->solve(restrict_vector(rhs_full, space));
    } catch (const SingularMatrix&) {
      throw;
    } catch (const std::exception& e) {
      throw SolverFailure(std::string("dln: linear solve failed: ") + e.what(),
                          std::numeric_limits<double>::quiet_NaN(), step_index);
    }
    if (!all_finite(x_int))
      throw DivergenceDetected("dln: non-finite solution", step_index);

    // residual check against the requested tolerance
    const DofVector rhs_int = restrict_vector(rhs_full, space);
    double bn = l2_norm(rhs_int);
    if (bn > 0.0) {
      DofVector ax(rhs_int.size(), Complex(0.0));
      for (int r = 0; r < reduced.n_rows; ++r) {
        Complex s = 0.0;
        for (int idx = reduced.row_offsets[r]; idx < reduced.row_offsets[r + 1];
             ++idx)
          s += red_vals[idx] * x_int[reduced.col_indices[idx]];
        ax[r] = s - rhs_int[r];
      }
      const double rel = l2_norm(ax) / bn;
      if (rel > config.tol)
        throw SolverFailure("dln: residual above tolerance", rel, step_index);
    }
    return expand_with_zero_boundary(x_int, space);
  }

  // RHS = b - (d1 M + w1 K) z1 - (d2 M + w2 K) z2 over the full DOF set.
  DofVector step_rhs(const DofVector& b, double d1, double w1,
                     const DofVector& z1, double d2, double w2,
                     const DofVector& z2) const {
    const DofVector m1 = matvec_vals(pattern.csr, m_vals, z1);
    const DofVector k1 = matvec_vals(pattern.csr, k_vals, z1);
    const DofVector m2 = matvec_vals(pattern.csr, m_vals, z2);
    const DofVector k2 = matvec_vals(pattern.csr, k_vals, z2);
    DofVector rhs(b);
    for (std::size_t i = 0; i < rhs.size(); ++i)
      rhs[i] -= d1 * m1[i] + w1 * k1[i] + d2 * m2[i] + w2 * k2[i];
    return rhs;
  }
};

GlStepper::GlStepper(const GlProblem& problem, const FeSpace& space,
                     const DlnConfig& config, const ComplexCsr* mass,
                     const ComplexCsr* stiffness)
    : impl_(new Impl(problem, space, config)) {
  if (mass) {
    check_same_pattern(*mass, impl_->pattern.csr, "GlStepper(mass)");
    impl_->m_vals = mass->values;
  }
  if (stiffness) {
    check_same_pattern(*stiffness, impl_->pattern.csr, "GlStepper(stiffness)");
    impl_->a_vals = stiffness->values;
  }
}

GlStepper::~GlStepper() = default;
GlStepper::GlStepper(GlStepper&&) noexcept = default;

ComplexCsr GlStepper::mass_csr() const { return impl_->csr_with(impl_->m_vals); }

ComplexCsr GlStepper::stiffness_csr() const {
  return impl_->csr_with(impl_->a_vals);
}

std::pair<DofVector, DofVector> GlStepper::ritz_initial() {
  const ComplexCsr m = impl_->csr_with(impl_->m_vals);
  const ComplexCsr a = impl_->csr_with(impl_->a_vals);
  DofVector u0 = ritz_project(impl_->space, m, a, impl_->problem.initial_u,
                              impl_->config.tol);
  DofVector v0 = ritz_project(impl_->space, m, a, impl_->problem.initial_v,
                              impl_->config.tol);
  impl_->init_norm_sum = impl_->mnorm(u0) + impl_->mnorm(v0);
  return {std::move(u0), std::move(v0)};
}

DofVector GlStepper::load_at(int which, double t) const {
  DofVector b(impl_->space.n_dofs(), Complex(0.0));
  const auto& sources =
      which == 1 ? impl_->problem.source_u : impl_->problem.source_v;
  const auto& terms = which == 1 ? impl_->load_u_terms : impl_->load_v_terms;
  if (!sources) return b;
  for (std::size_t j = 0; j < terms.size(); ++j) {
    const Complex tf = (*sources)[j].time_factor(t);
    const DofVector& vec = terms[j];
    for (std::size_t i = 0; i < b.size(); ++i) b[i] += tf * vec[i];
  }
  return b;
}

double GlStepper::l2_norm_of(const DofVector& coeffs) const {
  return impl_->mnorm(coeffs);
}

SchemeState GlStepper::cn_start(const DofVector& u0h, const DofVector& v0h) {
  Impl& im = *impl_;
  if (static_cast<int>(u0h.size()) != im.space.n_dofs() ||
      static_cast<int>(v0h.size()) != im.space.n_dofs())
    throw DimensionMismatch("cn_start: initial vector length mismatch");

  const bool analytic =
      static_cast<bool>(im.problem.initial_u.laplacian) &&
      static_cast<bool>(im.problem.initial_v.laplacian);
  if (analytic)
    im.predictor_moduli_analytic();
  else
    im.predictor_moduli_discrete(u0h, v0h);

  const double tau = im.config.tau;
  const DofVector b_u = load_at(1, 0.5 * tau);
  const DofVector b_v = load_at(2, 0.5 * tau);

  SchemeState state;
  state.n = 1;
  state.t = tau;

  // [(1/tau) M + (1/2) K] u^1 = [(1/tau) M - (1/2) K] u^0 + b(t_{1/2})
  im.fill_weighted(1);
  im.build_k(1);
  DofVector rhs = im.step_rhs(b_u, -1.0 / tau, 0.5, u0h, 0.0, 0.0, u0h);
  state.u_prev = im.solve_system(1.0 / tau, 0.5, rhs, 1);

  im.fill_weighted(2);
  im.build_k(2);
  rhs = im.step_rhs(b_v, -1.0 / tau, 0.5, v0h, 0.0, 0.0, v0h);
  state.v_prev = im.solve_system(1.0 / tau, 0.5, rhs, 1);

  state.u_prev2 = u0h;
  state.v_prev2 = v0h;
  return state;
}

void GlStepper::advance_with_loads(SchemeState& state, const DofVector& b_u,
                                   const DofVector& b_v) {
  Impl& im = *impl_;
  if (state.n < 1)
    throw std::invalid_argument("dln_step: state must hold two levels (n >= 1)");
  const int n_new = state.n + 1;
  const DlnWeights& w = im.weights;

  // extrapolated coefficient state
  im.tilde_u.assign(im.space.n_dofs(), Complex(0.0));
  im.tilde_v.assign(im.space.n_dofs(), Complex(0.0));
  for (int i = 0; i < im.space.n_dofs(); ++i) {
    im.tilde_u[i] = w.w_tilde[0] * state.u_prev[i] + w.w_tilde[1] * state.u_prev2[i];
    im.tilde_v[i] = w.w_tilde[0] * state.v_prev[i] + w.w_tilde[1] * state.v_prev2[i];
  }
  im.squared_moduli_at_qp(im.tilde_u, im.tilde_v);

  im.fill_weighted(1);
  im.build_k(1);
  DofVector rhs = im.step_rhs(b_u, w.d[1], w.w_hat[1], state.u_prev, w.d[2],
                              w.w_hat[2], state.u_prev2);
  DofVector u_new = im.solve_system(w.d[0], w.w_hat[0], rhs, n_new);

  im.fill_weighted(2);
  im.build_k(2);
  rhs = im.step_rhs(b_v, w.d[1], w.w_hat[1], state.v_prev, w.d[2], w.w_hat[2],
                    state.v_prev2);
  DofVector v_new = im.solve_system(w.d[0], w.w_hat[0], rhs, n_new);

  state.u_prev2 = std::move(state.u_prev);
  state.v_prev2 = std::move(state.v_prev);
  state.u_prev = std::move(u_new);
  state.v_prev = std::move(v_new);
  state.n = n_new;
  state.t = n_new * im.config.tau;
}

void GlStepper::advance(SchemeState& state) {
  const double theta = impl_->weights.theta;
  const double tau = impl_->config.tau;
  const double t_target = (state.n + 0.5 * theta) * tau;  // t_{n-1+theta/2}
  advance_with_loads(state, load_at(1, t_target), load_at(2, t_target));
}

SimulationResult GlStepper::run() {
  Impl& im = *impl_;
  if (im.config.N < 2)
    throw ConfigurationError("run: config must define N >= 2 steps");

  auto [u0, v0] = ritz_initial();
  SimulationResult result;
  result.u_norms.push_back(im.mnorm(u0));
  result.v_norms.push_back(im.mnorm(v0));

  SchemeState state = cn_start(u0, v0);
  result.u_norms.push_back(im.mnorm(state.u_prev));
  result.v_norms.push_back(im.mnorm(state.v_prev));

  const double guard = 1e6 * (1.0 + im.init_norm_sum);
  for (int n = 2; n <= im.config.N; ++n) {
    advance(state);
    const double un = im.mnorm(state.u_prev);
    const double vn = im.mnorm(state.v_prev);
    result.u_norms.push_back(un);
    result.v_norms.push_back(vn);
    if (!(un + vn <= guard))
      throw DivergenceDetected("run: solution norm exceeded divergence guard",
                               n);
  }

  result.u = std::move(state.u_prev);
  result.v = std::move(state.v_prev);
  return result;
}

SchemeState start_step_cn(const GlProblem& problem, const FeSpace& space,
                          const ComplexCsr& mass, const ComplexCsr& stiffness,
                          const DlnConfig& config) {
  GlStepper stepper(problem, space, config, &mass, &stiffness);
  auto [u0, v0] = stepper.ritz_initial();
  return stepper.cn_start(u0, v0);
}

SchemeState dln_step(const SchemeState& state, const GlProblem& problem,
                     const FeSpace& space, const ComplexCsr& mass,
                     const ComplexCsr& stiffness, const DlnWeights& weights,
                     const DofVector& b_u, const DofVector& b_v, double tol) {
  DlnConfig config;
  config.theta = weights.theta;
  config.tau = weights.tau;
  config.T = 0.0;
  config.N = 0;
  config.tol = tol;
  GlStepper stepper(problem, space, config, &mass, &stiffness);
  SchemeState next = state;
  stepper.advance_with_loads(next, b_u, b_v);
  return next;
}

SimulationResult run_simulation(const GlProblem& problem,
                                const DlnConfig& config, int n, int k) {
  const Mesh mesh = problem.dim == 2 ? build_unit_square_mesh(n)
                                     : build_unit_cube_mesh(n);
  const FeSpace space = build_space(mesh, k);
  GlStepper stepper(problem, space, config);
  return stepper.run();
}

}  // namespace gldln

// Copyright gldln developers. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#include "gldln/problems.hpp"

#include <cmath>
#include <stdexcept>

namespace gldln {

namespace {

constexpr double kPi = 3.14159265358979323846;
const Complex kI{0.0, 1.0};

/// Real-valued spatial profile with analytic derivatives.
struct SpaceProfile {
  std::function<double(const Vec&)> value;
  std::function<Vec(const Vec&)> gradient;
  std::function<double(const Vec&)> laplacian;
};

/// Complex-valued temporal profile of a separable exact solution.
struct TimeProfile {
  std::function<Complex(double)> value;
  std::function<Complex(double)> deriv;
  std::function<double(double)> abs2;  // |T(t)|^2
};

/// Polynomial nonlinearity sum_p c_p s^p, shared between the runtime callable
/// and the symbolic source construction.
using PolyNl = std::vector<std::pair<double, int>>;

std::function<double(double)> poly_callable(const PolyNl& poly) {
  return [poly](double s) {
    double acc = 0.0;
    for (const auto& [c, p] : poly) acc += c * std::pow(s, p);
    return acc;
  };
}

// q(t) = sin(t)(1-t), the 1D factor of the second exact solution family.
double q(double t) { return std::sin(t) * (1.0 - t); }
double dq(double t) { return std::cos(t) * (1.0 - t) - std::sin(t); }
double ddq(double t) { return -2.0 * std::cos(t) - (1.0 - t) * std::sin(t); }

SpaceProfile sine_product(int dim) {
  auto s = [](double t) { return std::sin(kPi * t); };
  auto c = [](double t) { return kPi * std::cos(kPi * t); };
  if (dim == 2) {
    return {
        [=](const Vec& x) { return s(x[0]) * s(x[1]); },
        [=](const Vec& x) { return Vec{c(x[0]) * s(x[1]), s(x[0]) * c(x[1]), 0.0}; },
        [=](const Vec& x) { return -2.0 * kPi * kPi * s(x[0]) * s(x[1]); }};
  }
  return {[=](const Vec& x) { return s(x[0]) * s(x[1]) * s(x[2]); },
          [=](const Vec& x) {
            return Vec{c(x[0]) * s(x[1]) * s(x[2]), s(x[0]) * c(x[1]) * s(x[2]),
                       s(x[0]) * s(x[1]) * c(x[2])};
          },
          [=](const Vec& x) {
            return -3.0 * kPi * kPi * s(x[0]) * s(x[1]) * s(x[2]);
          }};
}

SpaceProfile damped_sine_product(int dim) {
  if (dim == 2) {
    return {[](const Vec& x) { return q(x[0]) * q(x[1]); },
            [](const Vec& x) {
              return Vec{dq(x[0]) * q(x[1]), q(x[0]) * dq(x[1]), 0.0};
            },
            [](const Vec& x) {
              return ddq(x[0]) * q(x[1]) + q(x[0]) * ddq(x[1]);
            }};
  }
  return {[](const Vec& x) { return q(x[0]) * q(x[1]) * q(x[2]); },
          [](const Vec& x) {
            return Vec{dq(x[0]) * q(x[1]) * q(x[2]), q(x[0]) * dq(x[1]) * q(x[2]),
                       q(x[0]) * q(x[1]) * dq(x[2])};
          },
          [](const Vec& x) {
            return ddq(x[0]) * q(x[1]) * q(x[2]) + q(x[0]) * ddq(x[1]) * q(x[2]) +
                   q(x[0]) * q(x[1]) * ddq(x[2]);
          }};
}

// x(1-x) sin(pi y)
SpaceProfile bubble_sine() {
  return {[](const Vec& x) { return x[0] * (1.0 - x[0]) * std::sin(kPi * x[1]); },
          [](const Vec& x) {
            return Vec{(1.0 - 2.0 * x[0]) * std::sin(kPi * x[1]),
                       kPi * x[0] * (1.0 - x[0]) * std::cos(kPi * x[1]), 0.0};
          },
          [](const Vec& x) {
            return -2.0 * std::sin(kPi * x[1]) -
                   kPi * kPi * x[0] * (1.0 - x[0]) * std::sin(kPi * x[1]);
          }};
}

// x(1-x) y(1-y)
SpaceProfile bubble_product() {
  return {[](const Vec& x) { return x[0] * (1.0 - x[0]) * x[1] * (1.0 - x[1]); },
          [](const Vec& x) {
            return Vec{(1.0 - 2.0 * x[0]) * x[1] * (1.0 - x[1]),
                       x[0] * (1.0 - x[0]) * (1.0 - 2.0 * x[1]), 0.0};
          },
          [](const Vec& x) {
            return -2.0 * x[1] * (1.0 - x[1]) - 2.0 * x[0] * (1.0 - x[0]);
          }};
}

ScalarField initial_from(const TimeProfile& time, const SpaceProfile& space) {
  const Complex t0 = time.value(0.0);
  return {[=](const Vec& x) { return t0 * space.value(x); },
          [=](const Vec& x) {
            const Vec g = space.gradient(x);
            return CVec{t0 * g[0], t0 * g[1], t0 * g[2]};
          },
          [=](const Vec& x) { return t0 * space.laplacian(x); }};
}

SpaceTimeField exact_from(const TimeProfile& time, const SpaceProfile& space) {
  return {[=](const Vec& x, double t) { return time.value(t) * space.value(x); },
          [=](const Vec& x, double t) {
            const Complex tv = time.value(t);
            const Vec g = space.gradient(x);
            return CVec{tv * g[0], tv * g[1], tv * g[2]};
          }};
}

/// Source of one equation of the manufactured system,
///   s = w_t - c_nu Lap w + (c_f f(|u|^2) + c_g g(|v|^2)) w - gamma w,
/// built term by term from the separable factors. `own` is the profile pair
/// of the unknown w in this equation, `fu`/`gv` those entering f and g.
SeparableSource build_source(const TimeProfile& own_t, const SpaceProfile& own_x,
                             const TimeProfile& fu_t, const SpaceProfile& fu_x,
                             const TimeProfile& gv_t, const SpaceProfile& gv_x,
                             Complex c_nu, Complex c_f, Complex c_g, double gamma,
                             const PolyNl& f_poly, const PolyNl& g_poly) {
  SeparableSource source;

  source.push_back(
      {[=](double t) { return own_t.deriv(t) - gamma * own_t.value(t); },
       [=](const Vec& x) { return Complex(own_x.value(x)); }});

  source.push_back({[=](double t) { return -c_nu * own_t.value(t); },
                    [=](const Vec& x) { return Complex(own_x.laplacian(x)); }});

  for (const auto& [coef, power] : f_poly) {
    const int p = power;
    const double cp = coef;
    source.push_back(
        {[=](double t) {
           return c_f * cp * std::pow(fu_t.abs2(t), p) * own_t.value(t);
         },
         [=](const Vec& x) {
           return Complex(std::pow(fu_x.value(x) * fu_x.value(x), p) *
                          own_x.value(x));
         }});
  }
  for (const auto& [coef, power] : g_poly) {
    const int p = power;
    const double cp = coef;
    source.push_back(
        {[=](double t) {
           return c_g * cp * std::pow(gv_t.abs2(t), p) * own_t.value(t);
         },
         [=](const Vec& x) {
           return Complex(std::pow(gv_x.value(x) * gv_x.value(x), p) *
                          own_x.value(x));
         }});
  }
  return source;
}

GlProblem assemble_problem(int dim, const GlCoefficients& coeff,
                           const PolyNl& f_poly, const PolyNl& g_poly,
                           const TimeProfile& ut, const SpaceProfile& ux,
                           const TimeProfile& vt, const SpaceProfile& vx) {
  check_coefficients(coeff);
  GlProblem problem;
  problem.dim = dim;
  problem.coeff = coeff;
  problem.nl = {poly_callable(f_poly), poly_callable(f_poly),
                poly_callable(g_poly), poly_callable(g_poly)};
  problem.initial_u = initial_from(ut, ux);
  problem.initial_v = initial_from(vt, vx);
  problem.exact_u = exact_from(ut, ux);
  problem.exact_v = exact_from(vt, vx);
  problem.source_u = build_source(
      ut, ux, ut, ux, vt, vx, Complex(coeff.nu1, coeff.alpha1),
      Complex(coeff.kappa1, coeff.beta1), Complex(coeff.mu1, coeff.delta1),
      coeff.gamma1, f_poly, g_poly);
  problem.source_v = build_source(
      vt, vx, ut, ux, vt, vx, Complex(coeff.nu2, coeff.alpha2),
      Complex(coeff.kappa2, coeff.beta2), Complex(coeff.mu2, coeff.delta2),
      coeff.gamma2, f_poly, g_poly);
  return problem;
}

TimeProfile rotating_time() {  // i exp(i t)
  return {[](double t) { return kI * std::exp(kI * t); },
          [](double t) { return -std::exp(kI * t); },
          [](double) { return 1.0; }};
}

TimeProfile phase_time() {  // exp(i t^2)
  return {[](double t) { return std::exp(kI * (t * t)); },
          [](double t) { return 2.0 * kI * t * std::exp(kI * (t * t)); },
          [](double) { return 1.0; }};
}

}  // namespace

Complex eval_separable(const SeparableSource& source, const Vec& x, double t) {
  Complex acc = 0.0;
  for (const SourceTerm& term : source)
    acc += term.time_factor(t) * term.space_factor(x);
  return acc;
}

void check_coefficients(const GlCoefficients& c) {
  if (!(c.nu1 > 0.0 && c.nu2 > 0.0 && c.kappa1 > 0.0 && c.kappa2 > 0.0 &&
        c.mu1 > 0.0 && c.mu2 > 0.0))
    throw std::invalid_argument(
        "GlCoefficients: nu, kappa, mu must be positive");
}

GlProblem make_example(int id) {
  const PolyNl cubic = {{1.0, 1}};            // f(s) = s
  const PolyNl cubic_quintic = {{1.0, 1}, {1.0, 2}};  // f(s) = s + s^2

  switch (id) {
    case 1: {
      GlCoefficients c;
      c.nu1 = c.nu2 = 1.0;
      c.alpha1 = c.alpha2 = 1.0;
      c.kappa1 = c.kappa2 = 1.0;
      c.beta1 = c.beta2 = 1.0;
      c.mu1 = c.mu2 = 1.0;
      c.delta1 = c.delta2 = 1.0;
      c.gamma1 = c.gamma2 = 1.0;
      return assemble_problem(2, c, cubic, cubic, rotating_time(), sine_product(2),
                              phase_time(), damped_sine_product(2));
    }
    case 2: {
      GlCoefficients c;
      c.nu1 = 1.0;
      c.alpha1 = 2.0;
      c.kappa1 = 1.0;
      c.beta1 = 3.0;
      c.mu1 = 1.0;
      c.delta1 = 4.0;
      c.gamma1 = 5.0;
      c.nu2 = 5.0;
      c.alpha2 = 1.0;
      c.kappa2 = 4.0;
      c.beta2 = 1.0;
      c.mu2 = 3.0;
      c.delta2 = 1.0;
      c.gamma2 = 2.0;
      // u = exp(it)(1+5t^2) x(1-x) sin(pi y)
      TimeProfile ut{
          [](double t) { return std::exp(kI * t) * (1.0 + 5.0 * t * t); },
          [](double t) {
            return std::exp(kI * t) * (10.0 * t + kI * (1.0 + 5.0 * t * t));
          },
          [](double t) {
            const double a = 1.0 + 5.0 * t * t;
            return a * a;
          }};
      // v = (1+3i)(t+1)^2 x(1-x) y(1-y)
      TimeProfile vt{
          [](double t) { return Complex(1.0, 3.0) * (t + 1.0) * (t + 1.0); },
          [](double t) { return Complex(1.0, 3.0) * 2.0 * (t + 1.0); },
          [](double t) {
            const double s = (t + 1.0) * (t + 1.0);
            return 10.0 * s * s;
          }};
      return assemble_problem(2, c, cubic_quintic, cubic_quintic, ut,
                              bubble_sine(), vt, bubble_product());
    }
    case 3: {
      GlCoefficients c;
      c.nu1 = c.nu2 = 1.0;
      c.alpha1 = c.alpha2 = 1.0;
      c.kappa1 = c.kappa2 = 1.0;
      c.beta1 = c.beta2 = 1.0;
      c.mu1 = c.mu2 = 1.0;
      c.delta1 = c.delta2 = 1.0;
      c.gamma1 = c.gamma2 = 1.0;
      return assemble_problem(3, c, cubic, cubic, rotating_time(), sine_product(3),
                              phase_time(), damped_sine_product(3));
    }
    default:
      throw std::invalid_argument("make_example: id must be 1, 2 or 3");
  }
}

std::pair<Complex, CVec> eval_exact(const GlProblem& problem, char which,
                                    const Vec& x, double t) {
  const std::optional<SpaceTimeField>& field =
      which == 'u' ? problem.exact_u : problem.exact_v;
  if (which != 'u' && which != 'v')
    throw std::invalid_argument("eval_exact: which must be 'u' or 'v'");
  if (!field) throw UnsupportedQuery("eval_exact: no exact solution");
  return {field->value(x, t), field->gradient(x, t)};
}

Complex eval_source(const GlProblem& problem, int which, const Vec& x,
                    double t) {
  if (which != 1 && which != 2)
    throw std::invalid_argument("eval_source: which must be 1 or 2");
  const std::optional<SeparableSource>& source =
      which == 1 ? problem.source_u : problem.source_v;
  if (!source) throw UnsupportedQuery("eval_source: no source terms");
  return eval_separable(*source, x, t);
}

}  // namespace gldln

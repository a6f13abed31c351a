// Copyright gldln developers. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#ifndef GLDLN_TYPES_HPP
#define GLDLN_TYPES_HPP

#include <array>
#include <complex>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace gldln {

using Complex = std::complex<double>;

/// Coefficient vector over global DOFs (or over interior DOFs where stated).
using DofVector = std::vector<Complex>;

/// Spatial point / vector. The z component is zero in 2D.
using Vec = std::array<double, 3>;

/// Complex-valued gradient. The z component is zero in 2D.
using CVec = std::array<Complex, 3>;

/// Scalar field with analytic derivatives, used for initial data and
/// projection targets. `laplacian` is optional; operations that need it
/// fall back to discrete surrogates when absent.
struct ScalarField {
  std::function<Complex(const Vec&)> value;
  std::function<CVec(const Vec&)> gradient;
  std::function<Complex(const Vec&)> laplacian;  // may be empty
};

/// Time-dependent scalar field with analytic spatial gradient.
struct SpaceTimeField {
  std::function<Complex(const Vec&, double)> value;
  std::function<CVec(const Vec&, double)> gradient;
};

// ---- error types -----------------------------------------------------------

struct UnsupportedDegree : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct DimensionMismatch : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct SolverFailure : std::runtime_error {
  SolverFailure(const std::string& what, double residual_, int step_ = -1)
      : std::runtime_error(what), residual(residual_), step(step_) {}
  double residual;
  int step;  // time-step index when raised inside the scheme, else -1
};

struct SingularMatrix : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct DivergenceDetected : std::runtime_error {
  DivergenceDetected(const std::string& what, int step_)
      : std::runtime_error(what), step(step_) {}
  int step;
};

struct InvalidWeight : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct InvalidSource : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ConfigurationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct UnsupportedQuery : std::logic_error {
  using std::logic_error::logic_error;
};

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace gldln

#endif  // GLDLN_TYPES_HPP

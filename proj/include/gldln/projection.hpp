// Copyright gldln developers. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#ifndef GLDLN_PROJECTION_HPP
#define GLDLN_PROJECTION_HPP

#include "gldln/assembly.hpp"
#include "gldln/fespace.hpp"
#include "gldln/linalg.hpp"

namespace gldln {

/// Energy projection: solves (grad R_h v, grad phi) = (grad v, grad phi) over
/// the interior DOFs using the analytic gradient of the target; boundary DOFs
/// are set to zero (the target must have homogeneous trace).
DofVector ritz_project(const FeSpace& space, const ComplexCsr& mass,
                       const ComplexCsr& stiffness, const ScalarField& target,
                       double tol);

/// L2 projection over the full DOF set: M x = (v, phi).
DofVector l2_project(const FeSpace& space, const ComplexCsr& mass,
                     const ScalarField& target, double tol);

/// Discrete Laplacian: w with -(w, phi) = (grad u_h, grad phi) for interior
/// test functions, zero on boundary DOFs. u_h must vanish on boundary DOFs.
DofVector discrete_laplacian(const FeSpace& space, const ComplexCsr& mass,
                             const ComplexCsr& stiffness, const DofVector& u_h,
                             double tol);

}  // namespace gldln

#endif  // GLDLN_PROJECTION_HPP

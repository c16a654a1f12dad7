#pragma once

#include "paracontact/connection.hpp"
#include "paracontact/curvature.hpp"
#include "paracontact/structure.hpp"

namespace paracontact {

/// Conformal factor u for the rescaling eta_bar = (1/2) e^{-2u} eta, given as
/// a polynomial in the structure's chart coordinates.
struct ConformalFactor {
  Polynomial u;

  Jet at(std::span<const double> point, int order) const {
    return polynomial_jet(u, point, order);
  }
};

/// Pointwise derived data of a conformal factor: frame differential, covariant
/// Hessian, signed gradient norm, sub-Laplacian and the Reeb derivative.  The
/// frame differential uses the exact polynomial derivatives of u, so no jet
/// order is lost.
struct ConformalData {
  Jet u;
  JetTensor du;     // [dim]
  JetTensor hess;   // [dim][dim]: (nabla du)(A; B) under the base connection
  Jet grad_norm2;   // |nabla u|^2 = sum_a eps_a du(e_a)^2
  Jet laplacian;    // sum_a eps_a (nabla du)(e_a, e_a)
  Jet du_reeb;
};

ConformalData conformal_data(const ConformalFactor& u, const StructureEval& ev,
                             const Connection& conn);

/// Deformed structure: eta_bar = (1/2) e^{-2u} eta, frame
/// e_bar = sqrt(2) e^u e (preserving metric signs), Reeb field
/// 2 e^{2u} (Reeb + I grad u).  Paracontact mode only.
StructureSpec deform(const StructureSpec& spec, const ConformalFactor& u);

/// Antisymmetric part of the Hessian equals du(Reeb) omega.
double hessian_split_residual(const ConformalData& cd, const StructureEval& ev);

/// Compares independently re-solved barred objects (connection difference
/// tensor S, torsion, scalar curvature, L) against their closed-form
/// transformation laws, together with the M-tensor trace identities.
ResidualReport transformation_law_residuals(const StructureSpec& spec,
                                            const ConformalFactor& u,
                                            std::span<const double> point,
                                            int order = 3, double tol = 1e-8);

/// Normalized max-abs residual of 2 e^{2u} Wpc_bar - Wpc with the barred
/// tensor expressed in the unbarred frame.
double wpc_invariance_residual(const StructureSpec& spec, const ConformalFactor& u,
                               std::span<const double> point, int order = 3);

}  // namespace paracontact

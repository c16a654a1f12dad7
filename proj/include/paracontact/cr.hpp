#pragma once

#include "paracontact/connection.hpp"
#include "paracontact/curvature.hpp"
#include "paracontact/structure.hpp"

namespace paracontact {

/// Webster connection of a pseudohermitian structure: the generic axiom
/// solver run in CR mode (J^2 = -id, positive Levi form, theta(Reeb) = 1).
/// The torsion field of the result is the pseudohermitian torsion A.
Connection webster_connection(const StructureEval& ev,
                              double consistency_tol = 1e-8);

/// Symmetric tensor whose vanishing characterizes pseudoconformal flatness in
/// dimension three, built from the Webster scalar, torsion and their second
/// covariant derivatives.  Requires n == 1 (ModeError otherwise) and jet
/// order >= 4.
JetTensor f_car_tensor(const CurvatureData& curv, const Connection& conn,
                       const StructureEval& ev);

/// Comparison data for Sasakian structures (vanishing Webster torsion):
/// the Webster scalar against the Riemannian scalar of the extended metric,
/// the Reeb derivative of the Webster scalar, and the F tensor against the
/// Levi-Civita Hessian expression it reduces to.
struct SasakianComparison {
  double scal_cr = 0.0;
  double scal_g = 0.0;
  double relation_residual = 0.0;   // 2 Scal_cr - Scal_g - 2n
  double reeb_derivative = 0.0;     // Reeb(Scal_cr)
  double torsion_max = 0.0;         // max |A|: Sasakian check
  double fcar_vs_hessian = 0.0;     // F_car - (1/2) symmetrized J-Hessian of Scal_g
};

SasakianComparison sasakian_comparison(const StructureSpec& spec,
                                       std::span<const double> point, int order);

}  // namespace paracontact

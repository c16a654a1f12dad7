#pragma once

#include "paracontact/connection.hpp"
#include "paracontact/report.hpp"
#include "paracontact/structure.hpp"
#include "paracontact/tensor.hpp"

namespace paracontact {

/// Curvature of a connection in the adapted frame, with its contractions.
struct CurvatureData {
  JetTensor R;      // (0,4) components R(E_A, E_B, E_C, E_D), all slots full
  JetTensor ricci;  // r(A, B) = sum_a eps_a R(e_a, A, B, e_a)
  JetTensor rho;    // rho(A, B) = (1/2) sum_a eps_a R(A, B, e_a, I e_a)
  Jet scal;         // sum_a eps_a r(e_a, e_a)
};

/// R = [nabla, nabla] - nabla_[,] assembled from gamma derivatives, gamma
/// products and structure-function terms.  Works for any connection given in
/// the frame (canonical or Levi-Civita).
CurvatureData curvature_tensor(const Connection& conn, const StructureEval& ev);

/// The symmetric tensor L, its signed trace, the auxiliary (0,4) tensor PW
/// and the conformal curvature Wpc = (PW(X,Y,Z,V) - PW(IX,IY,Z,V)) / 2.
struct InvariantTensors {
  JetTensor L;      // [hd][hd]
  Jet trL;
  JetTensor PW;     // [hd][hd][hd][hd]
  JetTensor Wpc;    // [hd][hd][hd][hd]
  JetTensor B_xi;   // [hd]: the 1-form B(e_a, Reeb) from the trace identity
  Jet B_xixi;       // the scalar B(Reeb, Reeb)
  JetTensor F;      // [hd][hd]; only filled when requested (n == 1)
  bool has_B = false;
  bool has_F = false;
};

/// Computes L, PW, Wpc always; the B quantities when `want_B` (needs jet
/// order >= 4 of the input data); F when `want_F` (3-dimensional case only,
/// ModeError otherwise).
InvariantTensors invariant_tensors(const CurvatureData& curv, const Connection& conn,
                                   const StructureEval& ev, bool want_B = false,
                                   bool want_F = false);

/// Residuals of the first-Bianchi curvature identities: antisymmetries and
/// I-symmetry of R, the symmetric-part relation for R + R(I.,I.), the
/// R(Reeb,...) torsion-derivative identity, the Ricci symmetry and torsion
/// trace relations, the Ricci 2-form relation, the pair-exchange identity,
/// and the contracted-second-Bianchi divergence identity.
ResidualReport proposition31_residuals(const CurvatureData& curv,
                                       const Connection& conn,
                                       const StructureEval& ev, double tol = 1e-7);

/// Trace-freeness of PW, its I-pair symmetry (n > 1), its identical vanishing
/// (n == 1), and the redundant closed-form expansion of 2 Wpc in terms of R,
/// rho, Scal and omega.
ResidualReport conformal_curvature_residuals(const CurvatureData& curv,
                                             const InvariantTensors& inv,
                                             const StructureEval& ev,
                                             double tol = 1e-7);

/// Residuals of the integrability conditions that characterize conformal
/// flatness: the gradient equations for L and B, the curvature consequences
/// of Wpc = 0, and (n == 1) the three-dimensional reductions together with
/// the joint-vanishing check of F and the symmetric defect.
ResidualReport integrability_residuals(const CurvatureData& curv,
                                       const InvariantTensors& inv,
                                       const Connection& conn,
                                       const StructureEval& ev, double tol = 1e-7);

}  // namespace paracontact

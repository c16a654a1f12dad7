#pragma once

#include "paracontact/report.hpp"
#include "paracontact/structure.hpp"
#include "paracontact/tensor.hpp"

namespace paracontact {

/// A linear connection in the adapted frame.  For the canonical connection the
/// Reeb field is parallel and the horizontal bundle is preserved, so the
/// Reeb rows and columns of gamma vanish.
struct Connection {
  Mode mode = Mode::paracontact;
  JetTensor gamma;  // [A][B][C]: coefficient of E_C in nabla_{E_A} E_B
  JetTensor tau;    // [a][b] horizontal: g(T(Reeb, e_a), e_b)
  double rank_margin = 0.0;  // smallest normal-equation pivot (uniqueness margin)
};

/// Solves the defining axioms of the canonical connection (Webster connection
/// in CR mode) as one linear system at jet level: metric and I parallelism,
/// parallel Reeb field and contact form, purely vertical horizontal torsion,
/// and the symmetry and I-commutation constraints on the torsion endomorphism.
/// The coefficients of the system are constants in an adapted frame; the
/// system is overdetermined and solved in the least-squares sense, after which
/// the residual is asserted below `consistency_tol` (relative).
///
/// Throws NonUniqueConnection when the constant system loses column rank and
/// AxiomInconsistency when the least-squares residual shows the structure
/// violates the axioms.
Connection solve_connection(const StructureEval& ev, double consistency_tol = 1e-8);

/// Frame covariant derivative of a tensor with jet components.  The derivative
/// slot comes first in the result; each remaining slot picks up the usual
/// -Gamma correction, with slots of size hdim() restricted to the horizontal
/// frame.  Jet order drops by one.
JetTensor covariant_derivative(const JetTensor& T, const Connection& conn,
                               const StructureEval& ev);

/// Differential of a scalar jet on the frame: df(E_A), rank-1 tensor.
JetTensor frame_differential(const Jet& f, const StructureEval& ev);

/// Residuals of all connection axioms evaluated against the solved gamma:
/// nabla g, nabla I, nabla eta, nabla Reeb, horizontal torsion shape, torsion
/// endomorphism symmetries, the Lie-derivative identity for tau, and the
/// trace-freeness of tau.
ResidualReport connection_axiom_residuals(const Connection& conn,
                                          const StructureEval& ev,
                                          double tol = 1e-9);

/// Levi-Civita connection of the extension of g with g(Reeb,Reeb) = sigma,
/// via the Koszul formula on structure functions.  Used by the Sasakian
/// comparison in the CR analogue.
Connection levi_civita_connection(const StructureEval& ev);

}  // namespace paracontact

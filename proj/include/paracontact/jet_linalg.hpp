#pragma once

#include <vector>

#include "paracontact/jet.hpp"

namespace paracontact {

using JetVector = std::vector<Jet>;
using JetMatrix = std::vector<std::vector<Jet>>;

/// Solves A x = b for jet-valued square systems, exactly through the retained
/// order.  The constant-term matrix is factored once; higher-order corrections
/// enter through fixed-point back-substitution, which terminates because the
/// nonconstant part of A raises total degree.
///
/// Throws SingularSystem (with a condition estimate) when the constant-term
/// matrix is not invertible.
JetVector jet_linear_solve(const JetMatrix& A, const JetVector& b);

/// Same factorization applied to several right-hand sides.
std::vector<JetVector> jet_linear_solve_multi(const JetMatrix& A,
                                              const std::vector<JetVector>& bs);

/// Dense real least-squares with a fixed coefficient matrix applied to every
/// coefficient of a jet right-hand side.  Used by the connection solver, whose
/// axiom system has constant coefficients in an adapted frame.
class ConstantLeastSquares {
 public:
  /// `a` is row-major, rows x cols.  Throws SingularSystem when the normal
  /// equations are rank deficient (rank < cols).
  ConstantLeastSquares(std::vector<double> a, int rows, int cols);

  int rows() const { return rows_; }
  int cols() const { return cols_; }

  /// Smallest pivot of the normal-equation factorization, as a rank margin.
  double rank_margin() const { return rank_margin_; }

  /// Least-squares solution for a jet right-hand side (length rows()).
  JetVector solve(const JetVector& b) const;

  /// Residual A x - b.
  JetVector residual(const JetVector& x, const JetVector& b) const;

 private:
  std::vector<double> a_;       // row-major input matrix
  std::vector<double> chol_;    // Cholesky factor of A^T A
  int rows_, cols_;
  double rank_margin_;
};

}  // namespace paracontact

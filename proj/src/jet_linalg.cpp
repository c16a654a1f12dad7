#include "paracontact/jet_linalg.hpp"

#include <Eigen/Dense>

#include <cmath>

namespace paracontact {

namespace {

struct ValueLU {
  Eigen::PartialPivLU<Eigen::MatrixXd> lu;
  double cond_estimate;
};

ValueLU factor_constant_term(const JetMatrix& A) {
  const int m = static_cast<int>(A.size());
  Eigen::MatrixXd a0(m, m);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) a0(i, j) = A[i][j].value();
  ValueLU f{Eigen::PartialPivLU<Eigen::MatrixXd>(a0), 0.0};
  const Eigen::VectorXd diag = f.lu.matrixLU().diagonal().cwiseAbs();
  const double mx = diag.maxCoeff();
  const double mn = diag.minCoeff();
  f.cond_estimate = (mn == 0.0) ? std::numeric_limits<double>::infinity() : mx / mn;
  if (!(mn > mx * 1e-14))
    throw SingularSystem("constant-term matrix is singular", f.cond_estimate);
  return f;
}

// Applies the value-level inverse coefficient-by-coefficient.
JetVector apply_value_inverse(const ValueLU& f, const JetVector& b) {
  const int m = static_cast<int>(b.size());
  const int ncoef = b[0].size();
  const int nv = b[0].nvars();
  const int ord = b[0].order();
  std::vector<std::vector<double>> out(m, std::vector<double>(ncoef, 0.0));
  Eigen::VectorXd rhs(m);
  for (int k = 0; k < ncoef; ++k) {
    for (int i = 0; i < m; ++i) rhs(i) = b[i].coeff(k);
    Eigen::VectorXd x = f.lu.solve(rhs);
    for (int i = 0; i < m; ++i) out[i][k] = x(i);
  }
  JetVector r(m);
  for (int i = 0; i < m; ++i) r[i] = Jet::from_coeffs(nv, ord, std::move(out[i]));
  return r;
}

JetVector solve_one(const ValueLU& f, const JetMatrix& A, const JetVector& b) {
  const int m = static_cast<int>(b.size());
  const int ord = b[0].order();
  // x_{k+1} = A0^{-1} (b - Atilde x_k); Atilde raises degree, so `order`
  // sweeps reach the fixed point.
  JetVector x = apply_value_inverse(f, b);
  for (int sweep = 0; sweep < ord; ++sweep) {
    JetVector rhs = b;
    for (int i = 0; i < m; ++i) {
      for (int j = 0; j < m; ++j) {
        Jet aij = A[i][j];
        aij = aij - aij.value();  // nonconstant part
        if (aij.max_abs_coeff() == 0.0) continue;
        rhs[i] -= aij * x[j];
      }
    }
    x = apply_value_inverse(f, rhs);
  }
  return x;
}

}  // namespace

JetVector jet_linear_solve(const JetMatrix& A, const JetVector& b) {
  if (A.empty() || A.size() != b.size())
    throw ArityError("jet_linear_solve: shape mismatch");
  ValueLU f = factor_constant_term(A);
  return solve_one(f, A, b);
}

std::vector<JetVector> jet_linear_solve_multi(const JetMatrix& A,
                                              const std::vector<JetVector>& bs) {
  ValueLU f = factor_constant_term(A);
  std::vector<JetVector> out;
  out.reserve(bs.size());
  for (const JetVector& b : bs) out.push_back(solve_one(f, A, b));
  return out;
}

ConstantLeastSquares::ConstantLeastSquares(std::vector<double> a, int rows, int cols)
    : a_(std::move(a)), rows_(rows), cols_(cols) {
  if (static_cast<int>(a_.size()) != rows * cols)
    throw ArityError("least squares: matrix size mismatch");
  Eigen::Map<const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>>
      A(a_.data(), rows_, cols_);
  Eigen::MatrixXd N = A.transpose() * A;
  Eigen::LLT<Eigen::MatrixXd> llt(N);
  double scale = N.diagonal().maxCoeff();
  if (llt.info() != Eigen::Success) {
    throw SingularSystem("normal equations are rank deficient",
                         std::numeric_limits<double>::infinity());
  }
  Eigen::MatrixXd L = llt.matrixL();
  rank_margin_ = (L.diagonal().minCoeff() * L.diagonal().minCoeff()) / scale;
  if (!(rank_margin_ > 1e-12))
    throw SingularSystem("normal equations are rank deficient", 1.0 / rank_margin_);
  chol_.assign(L.data(), L.data() + static_cast<std::size_t>(cols_) * cols_);
}

JetVector ConstantLeastSquares::solve(const JetVector& b) const {
  if (static_cast<int>(b.size()) != rows_)
    throw ArityError("least squares: rhs size mismatch");
  const int ncoef = b[0].size();
  const int nv = b[0].nvars();
  const int ord = b[0].order();
  Eigen::Map<const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>>
      A(a_.data(), rows_, cols_);
  Eigen::Map<const Eigen::MatrixXd> L(chol_.data(), cols_, cols_);
  std::vector<std::vector<double>> out(cols_, std::vector<double>(ncoef, 0.0));
  Eigen::VectorXd rhs(rows_), ls(cols_);
  for (int k = 0; k < ncoef; ++k) {
    for (int i = 0; i < rows_; ++i) rhs(i) = b[i].coeff(k);
    ls = A.transpose() * rhs;
    L.triangularView<Eigen::Lower>().solveInPlace(ls);
    L.transpose().triangularView<Eigen::Upper>().solveInPlace(ls);
    for (int j = 0; j < cols_; ++j) out[j][k] = ls(j);
  }
  JetVector x(cols_);
  for (int j = 0; j < cols_; ++j) x[j] = Jet::from_coeffs(nv, ord, std::move(out[j]));
  return x;
}

JetVector ConstantLeastSquares::residual(const JetVector& x, const JetVector& b) const {
  JetVector r = b;
  for (int i = 0; i < rows_; ++i) {
    for (int j = 0; j < cols_; ++j) {
      const double aij = a_[static_cast<std::size_t>(i) * cols_ + j];
      if (aij == 0.0) continue;
      Jet t = x[j];
      t *= aij;
      r[i] -= t;
    }
  }
  return r;
}

}  // namespace paracontact

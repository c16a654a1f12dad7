#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "paracontact/errors.hpp"

namespace paracontact {

/// Dense multi-index bookkeeping for truncated Taylor coefficients.
///
/// Multi-indices are enumerated by total degree and, within a degree, in a
/// fixed lexicographic order that depends only on the variable count.  As a
/// consequence the table for (nvars, order-1) is an exact prefix of the table
/// for (nvars, order); derivatives and truncations are index-preserving.
class MultiIndexTable {
 public:
  /// Shared, cached table for a given variable count and order.
  static const MultiIndexTable& get(int nvars, int order);

  int nvars() const { return nvars_; }
  int order() const { return order_; }
  int size() const { return size_; }

  /// Exponent vector of multi-index `i`.
  std::span<const std::uint8_t> exponents(int i) const {
    return {exps_.data() + static_cast<std::size_t>(i) * nvars_,
            static_cast<std::size_t>(nvars_)};
  }

  int degree(int i) const { return degree_[i]; }

  /// First multi-index of total degree `k` (== count of indices of degree < k).
  int degree_offset(int k) const { return offset_[k]; }

  /// Index of alpha_i + alpha_j; only valid when degree(i)+degree(j) <= order.
  int product(int i, int j) const { return prod_[static_cast<std::size_t>(i) * size_ + j]; }

  /// Index of alpha_i - e_v, or -1 when alpha_i has no v-component.
  int shift_down(int i, int v) const { return shift_[static_cast<std::size_t>(i) * nvars_ + v]; }

  /// Index of a given exponent vector, or -1.
  int index_of(std::span<const int> alpha) const;

 private:
  MultiIndexTable(int nvars, int order);

  int nvars_, order_, size_;
  std::vector<std::uint8_t> exps_;
  std::vector<int> degree_;
  std::vector<int> offset_;
  std::vector<std::int32_t> prod_;
  std::vector<std::int32_t> shift_;
};

/// Truncated multivariate Taylor expansion of a scalar at a point.
///
/// A Jet stores all partial-derivative coefficients of total degree <= order.
/// Arithmetic requires operands with identical variable count and order;
/// mixing is an error, never a silent truncation.  Use truncated() to lower
/// the order explicitly.  Values are immutable in practice: every operation
/// returns a fresh jet.
class Jet {
 public:
  Jet() = default;

  static Jet constant(int nvars, int order, double value);

  /// Jet of the coordinate function x_v at base value `base`.
  static Jet variable(int nvars, int order, int v, double base);

  static Jet from_coeffs(int nvars, int order, std::vector<double> coeffs);

  bool empty() const { return tab_ == nullptr; }
  int nvars() const { return tab_->nvars(); }
  int order() const { return tab_->order(); }
  int size() const { return tab_->size(); }
  const MultiIndexTable& table() const { return *tab_; }

  /// Value of the underlying function at the base point.
  double value() const { return c_[0]; }

  std::span<const double> coeffs() const { return c_; }
  double coeff(int i) const { return c_[i]; }
  double coeff(std::span<const int> alpha) const;

  double max_abs_coeff() const;

  Jet& operator+=(const Jet& o);
  Jet& operator-=(const Jet& o);
  Jet& operator*=(double s);

  friend Jet operator+(Jet a, const Jet& b) { return a += b; }
  friend Jet operator-(Jet a, const Jet& b) { return a -= b; }
  friend Jet operator-(const Jet& a);
  friend Jet operator*(Jet a, double s) { return a *= s; }
  friend Jet operator*(double s, Jet a) { return a *= s; }
  friend Jet operator+(Jet a, double s) { a.c_[0] += s; return a; }
  friend Jet operator+(double s, Jet a) { a.c_[0] += s; return a; }
  friend Jet operator-(Jet a, double s) { a.c_[0] -= s; return a; }
  friend Jet operator-(double s, const Jet& a);
  friend Jet operator*(const Jet& a, const Jet& b);
  friend Jet operator/(const Jet& a, const Jet& b);
  friend Jet operator/(Jet a, double s) { return a *= 1.0 / s; }

  friend void check_compatible(const Jet& a, const Jet& b);

 private:
  const MultiIndexTable* tab_ = nullptr;
  std::vector<double> c_;
};

/// Multiplicative inverse; requires nonzero constant term.
Jet inverse(const Jet& a);

/// Taylor expansion of exp(a).
Jet exp(const Jet& a);

/// Taylor expansion of a^(num/den).  Integer exponents accept any base
/// (nonzero for negative powers); fractional exponents require a positive
/// constant term.
Jet pow(const Jet& a, long num, long den = 1);

/// Partial derivative; the result has order reduced by one.
Jet derivative(const Jet& a, int v);

/// Copy truncated to a lower order (explicit, never implicit).
Jet truncated(const Jet& a, int order);

/// Truncate both operands to the smaller of the two orders.
void align(Jet& a, Jet& b);

// --- polynomials (the coefficient-function format of structure files) ---

struct Monomial {
  double coeff = 0.0;
  std::vector<int> expo;  // one exponent per variable
};

using Polynomial = std::vector<Monomial>;

/// Jet of a polynomial at `point`.
Jet polynomial_jet(const Polynomial& p, std::span<const double> point, int order);

/// Exact partial derivative of a polynomial.
Polynomial polynomial_derivative(const Polynomial& p, int v, int nvars);

double polynomial_value(const Polynomial& p, std::span<const double> point);

Polynomial polynomial_sum(const Polynomial& a, const Polynomial& b);

}  // namespace paracontact

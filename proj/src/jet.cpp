#include "paracontact/jet.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>

namespace paracontact {

namespace {

void enumerate_degree(int nvars, int degree, std::vector<int>& current, int pos,
                      int remaining, std::vector<std::uint8_t>& out) {
  if (pos == nvars - 1) {
    current[pos] = remaining;
    for (int v = 0; v < nvars; ++v) out.push_back(static_cast<std::uint8_t>(current[v]));
    return;
  }
  for (int e = remaining; e >= 0; --e) {
    current[pos] = e;
    enumerate_degree(nvars, degree, current, pos + 1, remaining - e, out);
  }
}

std::uint64_t pack_key(std::span<const std::uint8_t> alpha) {
  std::uint64_t key = 0;
  for (auto e : alpha) key = key * 64 + e;
  return key;
}

}  // namespace

MultiIndexTable::MultiIndexTable(int nvars, int order)
    : nvars_(nvars), order_(order) {
  offset_.resize(order + 2);
  std::vector<int> scratch(nvars);
  for (int k = 0; k <= order; ++k) {
    offset_[k] = static_cast<int>(exps_.size()) / nvars;
    enumerate_degree(nvars, k, scratch, 0, k, exps_);
  }
  size_ = static_cast<int>(exps_.size()) / nvars;
  offset_[order + 1] = size_;

  degree_.resize(size_);
  std::map<std::uint64_t, int> lookup;
  for (int i = 0; i < size_; ++i) {
    int d = 0;
    for (int v = 0; v < nvars; ++v) d += exponents(i)[v];
    degree_[i] = d;
    lookup[pack_key(exponents(i))] = i;
  }

  prod_.assign(static_cast<std::size_t>(size_) * size_, -1);
  std::vector<int> sum(nvars);
  for (int i = 0; i < size_; ++i) {
    for (int j = 0; j < size_; ++j) {
      if (degree_[i] + degree_[j] > order) continue;
      for (int v = 0; v < nvars; ++v) sum[v] = exponents(i)[v] + exponents(j)[v];
      std::vector<std::uint8_t> key(sum.begin(), sum.end());
      prod_[static_cast<std::size_t>(i) * size_ + j] = lookup.at(pack_key(key));
    }
  }

  shift_.assign(static_cast<std::size_t>(size_) * nvars, -1);
  for (int i = 0; i < size_; ++i) {
    for (int v = 0; v < nvars; ++v) {
      if (exponents(i)[v] == 0) continue;
      for (int w = 0; w < nvars; ++w) sum[w] = exponents(i)[w] - (w == v ? 1 : 0);
      std::vector<std::uint8_t> key(sum.begin(), sum.end());
      shift_[static_cast<std::size_t>(i) * nvars + v] = lookup.at(pack_key(key));
    }
  }
}

const MultiIndexTable& MultiIndexTable::get(int nvars, int order) {
  static std::mutex mtx;
  static std::map<std::pair<int, int>, std::unique_ptr<MultiIndexTable>> cache;
  std::lock_guard<std::mutex> lock(mtx);
  auto& slot = cache[{nvars, order}];
  if (!slot) slot.reset(new MultiIndexTable(nvars, order));
  return *slot;
}

int MultiIndexTable::index_of(std::span<const int> alpha) const {
  for (int i = 0; i < size_; ++i) {
    bool match = true;
    for (int v = 0; v < nvars_; ++v) {
      if (exponents(i)[v] != alpha[v]) { match = false; break; }
    }
    if (match) return i;
  }
  return -1;
}

void check_compatible(const Jet& a, const Jet& b) {
  if (a.tab_ == nullptr || b.tab_ == nullptr)
    throw JetMismatch("arithmetic on an empty jet");
  if (a.tab_ != b.tab_)
    throw JetMismatch("jet arithmetic requires matching variable count and order");
}

Jet Jet::constant(int nvars, int order, double value) {
  Jet j;
  j.tab_ = &MultiIndexTable::get(nvars, order);
  j.c_.assign(j.tab_->size(), 0.0);
  j.c_[0] = value;
  return j;
}

Jet Jet::variable(int nvars, int order, int v, double base) {
  Jet j = constant(nvars, order, base);
  // degree-1 block starts at offset 1; within it the enumeration is
  // lexicographic descending, so variable v sits at offset 1 + v.  At order 0
  // only the value survives.
  if (order >= 1) j.c_[1 + v] = 1.0;
  return j;
}

Jet Jet::from_coeffs(int nvars, int order, std::vector<double> coeffs) {
  Jet j;
  j.tab_ = &MultiIndexTable::get(nvars, order);
  if (static_cast<int>(coeffs.size()) != j.tab_->size())
    throw ArityError("coefficient vector has wrong length");
  j.c_ = std::move(coeffs);
  return j;
}

double Jet::coeff(std::span<const int> alpha) const {
  int i = tab_->index_of(alpha);
  if (i < 0) throw ArityError("multi-index outside table");
  return c_[i];
}

double Jet::max_abs_coeff() const {
  double m = 0.0;
  for (double x : c_) m = std::max(m, std::abs(x));
  return m;
}

Jet& Jet::operator+=(const Jet& o) {
  check_compatible(*this, o);
  for (int i = 0; i < size(); ++i) c_[i] += o.c_[i];
  return *this;
}

Jet& Jet::operator-=(const Jet& o) {
  check_compatible(*this, o);
  for (int i = 0; i < size(); ++i) c_[i] -= o.c_[i];
  return *this;
}

Jet& Jet::operator*=(double s) {
  for (double& x : c_) x *= s;
  return *this;
}

Jet operator-(const Jet& a) {
  Jet r = a;
  for (double& x : r.c_) x = -x;
  return r;
}

Jet operator-(double s, const Jet& a) {
  Jet r = -a;
  r.c_[0] += s;
  return r;
}

Jet operator*(const Jet& a, const Jet& b) {
  check_compatible(a, b);
  const MultiIndexTable& t = *a.tab_;
  Jet r;
  r.tab_ = a.tab_;
  r.c_.assign(t.size(), 0.0);
  const int order = t.order();
  for (int i = 0; i < t.size(); ++i) {
    const double ai = a.c_[i];
    if (ai == 0.0) continue;
    const int jmax = t.degree_offset(order - t.degree(i) + 1);
    for (int j = 0; j < jmax; ++j) {
      r.c_[t.product(i, j)] += ai * b.c_[j];
    }
  }
  return r;
}

Jet inverse(const Jet& a) {
  const double a0 = a.value();
  if (a0 == 0.0 || !std::isfinite(a0))
    throw DegenerateJet("inverse of a jet with zero constant term");
  // 1/a = (1/a0) * sum_k (-w)^k with w = a/a0 - 1 nilpotent at truncation.
  Jet w = a * (1.0 / a0);
  w = w - 1.0;
  Jet acc = Jet::constant(a.nvars(), a.order(), 1.0);
  Jet term = acc;
  for (int k = 1; k <= a.order(); ++k) {
    term = term * w;
    if (k % 2 == 1)
      acc -= term;
    else
      acc += term;
  }
  return acc * (1.0 / a0);
}

Jet operator/(const Jet& a, const Jet& b) {
  check_compatible(a, b);
  return a * inverse(b);
}

Jet exp(const Jet& a) {
  Jet r = Jet::constant(a.nvars(), a.order(), 1.0);
  Jet term = r;
  Jet shifted = a - a.value();
  double fact = 1.0;
  for (int k = 1; k <= a.order(); ++k) {
    term = term * shifted;
    fact *= k;
    r += term * (1.0 / fact);
  }
  return r * std::exp(a.value());
}

Jet pow(const Jet& a, long num, long den) {
  if (den == 0) throw DomainError("power with zero denominator");
  if (den < 0) { num = -num; den = -den; }
  const bool integral = (num % den == 0);
  const double a0 = a.value();

  if (integral) {
    long e = num / den;
    if (e == 0) return Jet::constant(a.nvars(), a.order(), 1.0);
    const bool neg = e < 0;
    if (neg) {
      if (a0 == 0.0) throw DegenerateJet("negative power of zero constant term");
      e = -e;
    }
    Jet base = neg ? inverse(a) : a;
    Jet r = base;
    for (long k = 1; k < e; ++k) r = r * base;
    return r;
  }

  if (a0 <= 0.0)
    throw DomainError("fractional power of a non-positive constant term");
  const double r_exp = static_cast<double>(num) / static_cast<double>(den);
  // binomial series around a0: a^r = a0^r * sum_k C(r,k) w^k, w = a/a0 - 1.
  Jet w = a * (1.0 / a0) - 1.0;
  Jet acc = Jet::constant(a.nvars(), a.order(), 1.0);
  Jet term = acc;
  double binom = 1.0;
  for (int k = 1; k <= a.order(); ++k) {
    term = term * w;
    binom *= (r_exp - (k - 1)) / k;
    acc += term * binom;
  }
  return acc * std::pow(a0, r_exp);
}

Jet derivative(const Jet& a, int v) {
  if (a.order() < 1)
    throw OrderExhausted("derivative of an order-0 jet");
  const MultiIndexTable& t = a.table();
  const MultiIndexTable& small = MultiIndexTable::get(t.nvars(), t.order() - 1);
  std::vector<double> out(small.size(), 0.0);
  for (int i = 0; i < t.size(); ++i) {
    const int av = t.exponents(i)[v];
    if (av == 0) continue;
    // prefix property: the shifted index is valid in the smaller table.
    out[t.shift_down(i, v)] = av * a.coeff(i);
  }
  return Jet::from_coeffs(t.nvars(), t.order() - 1, std::move(out));
}

Jet truncated(const Jet& a, int order) {
  if (order > a.order())
    throw OrderExhausted("cannot truncate upward");
  if (order == a.order()) return a;
  const MultiIndexTable& small = MultiIndexTable::get(a.nvars(), order);
  std::vector<double> out(a.coeffs().begin(), a.coeffs().begin() + small.size());
  return Jet::from_coeffs(a.nvars(), order, std::move(out));
}

void align(Jet& a, Jet& b) {
  if (a.order() > b.order()) a = truncated(a, b.order());
  if (b.order() > a.order()) b = truncated(b, a.order());
}

Jet polynomial_jet(const Polynomial& p, std::span<const double> point, int order) {
  const int nvars = static_cast<int>(point.size());
  Jet r = Jet::constant(nvars, order, 0.0);
  std::vector<Jet> vars;
  vars.reserve(nvars);
  for (int v = 0; v < nvars; ++v) vars.push_back(Jet::variable(nvars, order, v, point[v]));
  for (const Monomial& m : p) {
    Jet term = Jet::constant(nvars, order, m.coeff);
    for (int v = 0; v < nvars; ++v) {
      for (int k = 0; k < (v < static_cast<int>(m.expo.size()) ? m.expo[v] : 0); ++k)
        term = term * vars[v];
    }
    r += term;
  }
  return r;
}

Polynomial polynomial_derivative(const Polynomial& p, int v, int nvars) {
  Polynomial r;
  for (const Monomial& m : p) {
    int e = v < static_cast<int>(m.expo.size()) ? m.expo[v] : 0;
    if (e == 0) continue;
    Monomial d = m;
    d.expo.resize(nvars, 0);
    d.coeff *= e;
    d.expo[v] = e - 1;
    r.push_back(std::move(d));
  }
  return r;
}

double polynomial_value(const Polynomial& p, std::span<const double> point) {
  double r = 0.0;
  for (const Monomial& m : p) {
    double term = m.coeff;
    for (std::size_t v = 0; v < m.expo.size(); ++v) {
      for (int k = 0; k < m.expo[v]; ++k) term *= point[v];
    }
    r += term;
  }
  return r;
}

Polynomial polynomial_sum(const Polynomial& a, const Polynomial& b) {
  Polynomial r = a;
  r.insert(r.end(), b.begin(), b.end());
  return r;
}

}  // namespace paracontact

#include "paracontact/yamabe.hpp"

#include <cmath>

#include "paracontact/models.hpp"

namespace paracontact {

Jet GroupFunction::at(std::span<const double> point, int order) const {
  const int d = 2 * n + 1;
  if (static_cast<int>(point.size()) != d)
    throw ArityError("group point has wrong dimension");
  if (singular_margin) {
    const double m = singular_margin(point);
    if (m < guard) throw NearSingularSet("evaluation within guard of a singular set");
  }
  std::vector<Jet> q(d);
  for (int i = 0; i < d; ++i) q[i] = Jet::variable(d, order, i, point[i]);
  return eval(q);
}

namespace {

Jet radicand_jet(std::span<const Jet> q, int n, double eps2) {
  Jet w = Jet::constant(q[0].nvars(), q[0].order(), eps2);
  for (int k = 0; k < n; ++k) w += q[k] * q[k];
  for (int k = 0; k < n; ++k) w -= q[n + k] * q[n + k];
  return w * w - q[2 * n] * q[2 * n];
}

double radicand_value(std::span<const double> p, int n, double eps2) {
  double w = eps2;
  for (int k = 0; k < n; ++k) w += p[k] * p[k] - p[n + k] * p[n + k];
  return w * w - p[2 * n] * p[2 * n];
}

// r^{num/den} with the sign conventions of the solution family: integer
// exponents accept any nonzero base, half-integer exponents need a positive
// base.
Jet family_pow(const Jet& r, long num, long den) {
  if (num % den != 0 && r.value() <= 0.0)
    throw NegativeBase("fractional power of a negative radicand");
  return pow(r, num, den);
}

}  // namespace

GroupFunction phi_epsilon_fn(int n, double eps) {
  GroupFunction f;
  f.n = n;
  const double eps2 = eps * eps;
  const double c = 4.0 * n * n * eps2;
  f.eval = [n, eps2, c](std::span<const Jet> q) {
    Jet r = radicand_jet(q, n, eps2);
    if (std::abs(r.value()) < 1e-12)
      throw NearSingularSet("phi_eps evaluated on its singular set");
    return family_pow(inverse(r) * c, n, 2);
  };
  f.singular_margin = [n, eps2](std::span<const double> p) {
    const double r = radicand_value(p, n, eps2);
    // odd n: half-integer power, so the valid domain is r > 0
    return (n % 2 == 1) ? r : std::abs(r);
  };
  return f;
}

double phi_epsilon(int n, double eps, std::span<const double> p) {
  return phi_epsilon_fn(n, eps).at(p, 0).value();
}

GroupFunction f_standard(int n) {
  GroupFunction f;
  f.n = n;
  f.eval = [n](std::span<const Jet> q) {
    Jet r = radicand_jet(q, n, 1.0);
    if (std::abs(r.value()) < 1e-12)
      throw NearSingularSet("f evaluated on its singular set");
    return family_pow(r, -n, 2);
  };
  f.singular_margin = [n](std::span<const double> p) {
    const double r = radicand_value(p, n, 1.0);
    return (n % 2 == 1) ? r : std::abs(r);
  };
  return f;
}

GroupFunction constant_fn(int n, double c) {
  GroupFunction f;
  f.n = n;
  f.eval = [c](std::span<const Jet> q) {
    return Jet::constant(q[0].nvars(), q[0].order(), c);
  };
  return f;
}

GroupFunction polynomial_fn(int n, Polynomial p) {
  GroupFunction f;
  f.n = n;
  f.eval = [p = std::move(p)](std::span<const Jet> q) {
    Jet acc = Jet::constant(q[0].nvars(), q[0].order(), 0.0);
    for (const Monomial& m : p) {
      Jet term = Jet::constant(q[0].nvars(), q[0].order(), m.coeff);
      for (std::size_t v = 0; v < m.expo.size(); ++v)
        for (int e = 0; e < m.expo[v]; ++e) term = term * q[v];
      acc += term;
    }
    return acc;
  };
  return f;
}

double ultrahyperbolic_L(const GroupFunction& phi, std::span<const double> p,
                         FrameConvention conv) {
  const int n = phi.n;
  const int d = 2 * n + 1;
  Jet f = phi.at(p, 2);
  const double vsign = conv == FrameConvention::plus ? 1.0 : -1.0;

  std::vector<Jet> q1(d);  // coordinates at one order below f
  for (int i = 0; i < d; ++i) q1[i] = Jet::variable(d, 1, i, p[i]);

  auto apply_U = [&](int k, const Jet& g) {
    // U_k = d/du_k + 2 v_k d/dt (vsign +) or - 2 v_k d/dt (vsign -)
    Jet r = derivative(g, k);
    r += truncated(q1[n + k], g.order() - 1) * derivative(g, 2 * n) * (2.0 * vsign);
    return r;
  };
  auto apply_V = [&](int k, const Jet& g) {
    Jet r = derivative(g, n + k);
    r -= truncated(q1[k], g.order() - 1) * derivative(g, 2 * n) * (2.0 * vsign);
    return r;
  };

  double acc = 0.0;
  for (int k = 0; k < n; ++k) {
    acc += apply_U(k, apply_U(k, f)).value();
    acc -= apply_V(k, apply_V(k, f)).value();
  }
  return acc;
}

namespace {

double rational_pow(double base, long num, long den) {
  if (num % den == 0) {
    long e = num / den;
    double r = 1.0;
    const double b = e < 0 ? 1.0 / base : base;
    for (long k = 0; k < std::labs(e); ++k) r *= b;
    return r;
  }
  if (base <= 0.0)
    throw DomainError("fractional power of a non-positive value");
  return std::pow(base, static_cast<double>(num) / static_cast<double>(den));
}

}  // namespace

double yamabe_residual(const GroupFunction& phi, int n, std::span<const double> p,
                       FrameConvention conv) {
  const double lphi = ultrahyperbolic_L(phi, p, conv);
  const double val = phi.at(p, 0).value();
  const double rhs = rational_pow(val, n + 2, n);
  return std::abs(lphi + rhs) / std::max(1.0, std::abs(rhs));
}

GroupFunction kelvin(const GroupFunction& phi, int n) {
  GroupFunction f;
  f.n = n;
  const double guard = phi.guard;
  f.eval = [phi, n](std::span<const Jet> q) {
    Jet r = radicand_jet(q, n, 0.0);
    if (std::abs(r.value()) < 1e-12)
      throw NearSingularSet("Kelvin transform on the inversion singular set");
    Jet pre = family_pow(r, -n, 2);
    std::vector<Jet> inv = inversion_jets(q, n, 1e-12);
    return pre * phi.eval(inv);
  };
  f.singular_margin = [phi, n, guard](std::span<const double> p) {
    const double r = radicand_value(p, n, 0.0);
    const double own = (n % 2 == 1) ? r : std::abs(r);
    if (own < guard) return own;
    if (!phi.singular_margin) return own;
    std::vector<double> img = inversion(p, n, guard);
    return std::min(own, phi.singular_margin(img));
  };
  return f;
}

GroupFunction dilate(const GroupFunction& phi, int n, double lambda) {
  if (lambda == 0.0) throw DomainError("dilation parameter must be nonzero");
  GroupFunction f;
  f.n = n;
  const double weight = rational_pow(lambda, n, 1);
  f.eval = [phi, n, lambda, weight](std::span<const Jet> q) {
    std::vector<Jet> scaled(q.begin(), q.end());
    for (int k = 0; k < 2 * n; ++k) scaled[k] *= lambda;
    scaled[2 * n] *= lambda * lambda;
    return phi.eval(scaled) * weight;
  };
  if (phi.singular_margin) {
    f.singular_margin = [phi, n, lambda](std::span<const double> p) {
      std::vector<double> scaled(p.begin(), p.end());
      for (int k = 0; k < 2 * n; ++k) scaled[k] *= lambda;
      scaled[2 * n] *= lambda * lambda;
      return phi.singular_margin(scaled);
    };
  }
  return f;
}

GroupFunction translate(const GroupFunction& phi, int n, std::vector<double> g0) {
  GroupFunction f;
  f.n = n;
  f.eval = [phi, n, g0](std::span<const Jet> q) {
    std::vector<Jet> moved = left_translate_jets(g0, q, n);
    return phi.eval(moved);
  };
  if (phi.singular_margin) {
    f.singular_margin = [phi, n, g0](std::span<const double> p) {
      std::vector<double> moved = group_multiply(g0, p, n);
      return phi.singular_margin(moved);
    };
  }
  return f;
}

}  // namespace paracontact

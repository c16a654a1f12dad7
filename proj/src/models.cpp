#include "paracontact/models.hpp"

#include <cmath>
#include <memory>

#include "paracontact/jet_linalg.hpp"

namespace paracontact {

namespace {

Polynomial constant_poly(double c, int nvars) {
  if (c == 0.0) return {};
  return {{c, std::vector<int>(nvars, 0)}};
}

Polynomial monomial(double c, int nvars, std::initializer_list<std::pair<int, int>> ve) {
  Monomial m;
  m.coeff = c;
  m.expo.assign(nvars, 0);
  for (auto [v, e] : ve) m.expo[v] = e;
  return {m};
}

RationalFn rf(Polynomial p) { return RationalFn{std::move(p), {}}; }

}  // namespace

StructureSpec heisenberg_spec(int n) {
  const int d = 2 * n + 1;
  StructureSpec spec;
  spec.name = "hyperbolic-heisenberg";
  spec.n = n;
  spec.mode = Mode::paracontact;
  for (int k = 1; k <= n; ++k) spec.coords.push_back("u" + std::to_string(k));
  for (int k = 1; k <= n; ++k) spec.coords.push_back("v" + std::to_string(k));
  spec.coords.push_back("t");

  std::vector<std::vector<RationalFn>> frame(d, std::vector<RationalFn>(d, rf({})));
  // U_k = d/du_k + 2 v_k d/dt
  for (int k = 0; k < n; ++k) {
    frame[k][k] = rf(constant_poly(1.0, d));
    frame[k][2 * n] = rf(monomial(2.0, d, {{n + k, 1}}));
  }
  // V_k = d/dv_k - 2 u_k d/dt
  for (int k = 0; k < n; ++k) {
    frame[n + k][n + k] = rf(constant_poly(1.0, d));
    frame[n + k][2 * n] = rf(monomial(-2.0, d, {{k, 1}}));
  }
  // Reeb = 2 d/dt
  frame[2 * n][2 * n] = rf(constant_poly(2.0, d));

  // eta = -dt/2 - sum(u_k dv_k - v_k du_k)
  std::vector<RationalFn> eta(d, rf({}));
  for (int k = 0; k < n; ++k) {
    eta[k] = rf(monomial(1.0, d, {{n + k, 1}}));    // +v_k du_k
    eta[n + k] = rf(monomial(-1.0, d, {{k, 1}}));   // -u_k dv_k
  }
  eta[2 * n] = rf(constant_poly(-0.5, d));

  spec.fields = std::make_shared<PolynomialProvider>(std::move(frame), std::move(eta));
  return spec;
}

StructureSpec cr_heisenberg_spec(int n) {
  const int d = 2 * n + 1;
  StructureSpec spec;
  spec.name = "cr-heisenberg";
  spec.n = n;
  spec.mode = Mode::cr;
  for (int k = 1; k <= n; ++k) spec.coords.push_back("x" + std::to_string(k));
  for (int k = 1; k <= n; ++k) spec.coords.push_back("y" + std::to_string(k));
  spec.coords.push_back("t");

  std::vector<std::vector<RationalFn>> frame(d, std::vector<RationalFn>(d, rf({})));
  // X_k = d/dx_k + 2 y_k d/dt, Y_k = d/dy_k - 2 x_k d/dt, Reeb = 2 d/dt
  for (int k = 0; k < n; ++k) {
    frame[k][k] = rf(constant_poly(1.0, d));
    frame[k][2 * n] = rf(monomial(2.0, d, {{n + k, 1}}));
    frame[n + k][n + k] = rf(constant_poly(1.0, d));
    frame[n + k][2 * n] = rf(monomial(-2.0, d, {{k, 1}}));
  }
  frame[2 * n][2 * n] = rf(constant_poly(2.0, d));

  // theta = dt/2 + sum(x_k dy_k - y_k dx_k)
  std::vector<RationalFn> eta(d, rf({}));
  for (int k = 0; k < n; ++k) {
    eta[k] = rf(monomial(-1.0, d, {{n + k, 1}}));
    eta[n + k] = rf(monomial(1.0, d, {{k, 1}}));
  }
  eta[2 * n] = rf(constant_poly(0.5, d));

  spec.fields = std::make_shared<PolynomialProvider>(std::move(frame), std::move(eta));
  return spec;
}

namespace {

// Induced structure on a level set of Phi = G(p, p) - 1 - P(chart) in the
// flat (para)hermitian ambient space R^{2n+2}, via the graph chart
// x_0 = sqrt(1 + P - rest).  Ambient coordinates are interleaved
// (x_0, y_0, ..., x_n, y_n); chart coordinates drop x_0.
class HypersurfaceProvider : public FieldProvider {
 public:
  HypersurfaceProvider(int n, Mode mode, Polynomial P)
      : n_(n), mode_(mode), P_(std::move(P)) {}

  FieldSample sample(std::span<const double> point, int order) const override;

 private:
  int n_;
  Mode mode_;
  Polynomial P_;  // polynomial in the 2n+1 chart coordinates

  int adim() const { return 2 * n_ + 2; }
  int cdim() const { return 2 * n_ + 1; }
  double gsign(int amb) const {
    return (amb % 2 == 0) ? 1.0 : (mode_ == Mode::paracontact ? -1.0 : 1.0);
  }

  std::vector<Jet> apply_ambient_I(const std::vector<Jet>& v) const {
    // paracontact: I dx_j = dy_j, I dy_j = dx_j; CR: J dx_j = dy_j, J dy_j = -dx_j
    std::vector<Jet> out(adim());
    for (int j = 0; j <= n_; ++j) {
      if (mode_ == Mode::paracontact) {
        out[2 * j] = v[2 * j + 1];
        out[2 * j + 1] = v[2 * j];
      } else {
        out[2 * j] = -v[2 * j + 1];
        out[2 * j + 1] = v[2 * j];
      }
    }
    return out;
  }

  Jet dot(const std::vector<Jet>& a, const std::vector<Jet>& b) const {
    Jet r = a[0] * b[0];
    for (int j = 1; j < adim(); ++j) {
      if (gsign(j) > 0)
        r += a[j] * b[j];
      else
        r -= a[j] * b[j];
    }
    return r;
  }
};

FieldSample HypersurfaceProvider::sample(std::span<const double> point,
                                         int order) const {
  const int cd = cdim(), ad = adim();
  if (static_cast<int>(point.size()) != cd)
    throw ArityError("hypersurface chart point has wrong dimension");
  const double s = mode_s(mode_);
  const double sigma = mode_sigma(mode_);

  // chart coordinate jets and the graph function x_0
  std::vector<Jet> q(cd);
  for (int i = 0; i < cd; ++i) q[i] = Jet::variable(cd, order, i, point[i]);
  Jet radicand = polynomial_jet(P_, point, order) + 1.0;
  for (int i = 0; i < cd; ++i) {
    Jet sq = q[i] * q[i];
    if (gsign(i + 1) > 0)
      radicand -= sq;
    else
      radicand += sq;
  }
  if (radicand.value() < 1e-6)
    throw ChartDomain("point outside the graph chart of the hypersurface");
  Jet x0 = pow(radicand, 1, 2);

  std::vector<Jet> amb(ad);
  amb[0] = x0;
  for (int i = 0; i < cd; ++i) amb[i + 1] = q[i];

  // gradient of Phi (raised), its norm, the unit normal and xi0 = I N
  std::vector<Polynomial> dP(cd);
  for (int i = 0; i < cd; ++i) dP[i] = polynomial_derivative(P_, i, cd);
  std::vector<Jet> grad(ad);
  for (int j = 0; j < ad; ++j) {
    grad[j] = amb[j] * 2.0;
    if (j >= 1) grad[j] -= polynomial_jet(dP[j - 1], point, order) * gsign(j);
  }
  Jet rho2 = dot(grad, grad);
  if (std::abs(rho2.value()) < 1e-8)
    throw ChartDegenerate("degenerate hypersurface normal");
  if (rho2.value() < 0.0)
    throw ChartDegenerate("normal has the wrong causal type for this structure");
  Jet rho_inv = pow(rho2, -1, 2);
  std::vector<Jet> N(ad);
  for (int j = 0; j < ad; ++j) N[j] = grad[j] * rho_inv;
  std::vector<Jet> xi0 = apply_ambient_I(N);

  // raised ambient Hessian of Phi applied to a vector
  auto hess_apply = [&](const std::vector<Jet>& v) {
    std::vector<Jet> out(ad);
    for (int j = 0; j < ad; ++j) {
      out[j] = v[j] * 2.0;
      if (j >= 1) {
        for (int k = 1; k < ad; ++k) {
          Polynomial d2 = polynomial_derivative(dP[j - 1], k - 1, cd);
          if (d2.empty()) continue;
          out[j] -= polynomial_jet(d2, point, order) * v[k] * gsign(j);
        }
      }
    }
    return out;
  };

  // d(eta)(X, Y) = [G(IX, Hess Y) - G(IY, Hess X)] / |grad|  for tangent X, Y
  // with one argument allowed to be xi0 via the same closed form.
  auto deta_pair = [&](const std::vector<Jet>& X, const std::vector<Jet>& HX,
                       const std::vector<Jet>& Y, const std::vector<Jet>& HY) {
    return (dot(apply_ambient_I(X), HY) - dot(apply_ambient_I(Y), HX)) * rho_inv;
  };

  // tangent lifts of the chart coordinate fields
  std::vector<std::vector<Jet>> T(cd, std::vector<Jet>(ad, Jet::constant(cd, order, 0.0)));
  Jet x0_inv = pow(radicand, -1, 2);
  for (int i = 0; i < cd; ++i) {
    Jet drad = polynomial_jet(dP[i], point, order);
    drad -= q[i] * (2.0 * gsign(i + 1));
    T[i][0] = drad * x0_inv * 0.5;  // d x_0 / d q_i
    T[i][i + 1] = Jet::constant(cd, order, 1.0);
  }

  // eta = G( . , xi0) restricted to the tangent space
  std::vector<Jet> eta(cd);
  for (int i = 0; i < cd; ++i) eta[i] = dot(T[i], xi0);

  // Levi form g_L(X, Y) = (s/2) d(eta)(I X, Y) via the closed form above;
  // used to orthonormalize in H.
  auto levi = [&](const std::vector<Jet>& X, const std::vector<Jet>& Y,
                  const std::vector<Jet>& HY) {
    std::vector<Jet> IX = apply_ambient_I(X);
    return deta_pair(IX, hess_apply(IX), Y, HY) * (0.5 * s);
  };

  // paired Gram-Schmidt in H = tangent ∩ xi0-orthogonal
  const int hd = 2 * n_;
  std::vector<std::vector<Jet>> hframe(hd);
  std::vector<std::vector<Jet>> hframe_H(hd);  // cached Hessian images
  auto build = [&](double pivot_threshold) -> bool {
    int built_pairs = 0;
    for (auto& f : hframe) f.clear();
    for (int cand = 0; cand < cd && built_pairs < n_; ++cand) {
      std::vector<Jet> v = T[cand];
      // project out xi0 inside the tangent space; G(xi0, xi0) = sigma
      Jet c0 = dot(v, xi0);
      for (int j = 0; j < ad; ++j) v[j] = v[j] - xi0[j] * (c0 * sigma);
      // project against the pairs already built (Levi-orthogonal)
      for (int p = 0; p < built_pairs; ++p) {
        for (int w : {p, n_ + p}) {
          Jet coef = levi(v, hframe[w], hframe_H[w]);
          const double sign = (w < n_) ? 1.0 : -s;  // g_L(w, w)
          for (int j = 0; j < ad; ++j) v[j] = v[j] - hframe[w][j] * (coef * sign);
        }
      }
      std::vector<Jet> Hv = hess_apply(v);
      Jet mu = levi(v, v, Hv);
      if (std::abs(mu.value()) < pivot_threshold) continue;
      if (mu.value() > 0.0) {
        Jet nrm = pow(mu, -1, 2);
        std::vector<Jet> e(ad);
        for (int j = 0; j < ad; ++j) e[j] = v[j] * nrm;
        hframe[built_pairs] = e;
        hframe[n_ + built_pairs] = apply_ambient_I(e);
      } else {
        Jet nrm = pow(-mu, -1, 2);
        std::vector<Jet> w(ad);
        for (int j = 0; j < ad; ++j) w[j] = v[j] * nrm;
        if (mode_ == Mode::cr)
          throw ChartDegenerate("negative Levi pivot in CR mode");
        hframe[n_ + built_pairs] = w;
        hframe[built_pairs] = apply_ambient_I(w);
      }
      hframe_H[built_pairs] = hess_apply(hframe[built_pairs]);
      hframe_H[n_ + built_pairs] = hess_apply(hframe[n_ + built_pairs]);
      ++built_pairs;
    }
    return built_pairs == n_;
  };
  if (!build(0.25) && !build(0.05))
    throw ChartDegenerate("orthonormalization ran out of pivot candidates");

  // Reeb correction: xi = xi0 + h, h in H, with d(eta)(xi, .) = 0 on H
  JetMatrix A(hd, JetVector(hd));
  JetVector b(hd);
  for (int bidx = 0; bidx < hd; ++bidx) {
    for (int cidx = 0; cidx < hd; ++cidx)
      A[bidx][cidx] = deta_pair(hframe[cidx], hframe_H[cidx], hframe[bidx], hframe_H[bidx]);
    // d(eta)(xi0, e_b) = -G(I e_b, Hess xi0) / |grad|
    b[bidx] = dot(apply_ambient_I(hframe[bidx]), hess_apply(xi0)) * rho_inv;
  }
  JetVector h = jet_linear_solve(A, b);
  std::vector<Jet> xi = xi0;
  for (int c = 0; c < hd; ++c)
    for (int j = 0; j < ad; ++j) xi[j] += hframe[c][j] * h[c];

  // chart components: drop the x_0 component (fields are tangent)
  FieldSample out;
  out.frame.resize(cd);
  for (int a = 0; a < hd; ++a)
    out.frame[a] = std::vector<Jet>(hframe[a].begin() + 1, hframe[a].end());
  out.frame[hd] = std::vector<Jet>(xi.begin() + 1, xi.end());
  out.eta = eta;
  return out;
}

}  // namespace

StructureSpec hyperboloid_spec(int n, std::span<const double> chart_center) {
  if (!chart_center.empty()) {
    if (static_cast<int>(chart_center.size()) != 2 * n + 2)
      throw ArityError("chart center must be an ambient point");
    double q = 0.0;
    for (int j = 0; j < 2 * n + 2; ++j)
      q += (j % 2 == 0 ? 1.0 : -1.0) * chart_center[j] * chart_center[j];
    if (std::abs(q - 1.0) > 1e-12)
      throw ChartDomain("chart center is not on the hyperboloid");
    if (chart_center[0] < 1e-3)
      throw ChartDomain("chart center has x_0 too close to zero for the graph chart");
  }
  StructureSpec spec;
  spec.name = "hyperboloid";
  spec.n = n;
  spec.mode = Mode::paracontact;
  spec.coords.push_back("y0");
  for (int k = 1; k <= n; ++k) {
    spec.coords.push_back("x" + std::to_string(k));
    spec.coords.push_back("y" + std::to_string(k));
  }
  spec.fields = std::make_shared<HypersurfaceProvider>(n, Mode::paracontact, Polynomial{});
  return spec;
}

StructureSpec perturbed_hyperboloid_spec(int n, const Polynomial& perturbation) {
  StructureSpec spec = hyperboloid_spec(n);
  spec.name = "perturbed-hyperboloid";
  spec.fields =
      std::make_shared<HypersurfaceProvider>(n, Mode::paracontact, perturbation);
  return spec;
}

StructureSpec sphere_spec(int n) {
  StructureSpec spec;
  spec.name = "sphere";
  spec.n = n;
  spec.mode = Mode::cr;
  spec.coords.push_back("y0");
  for (int k = 1; k <= n; ++k) {
    spec.coords.push_back("x" + std::to_string(k));
    spec.coords.push_back("y" + std::to_string(k));
  }
  spec.fields = std::make_shared<HypersurfaceProvider>(n, Mode::cr, Polynomial{});
  return spec;
}

namespace {

// e_1 = (1/lambda) d/dx, e_2 = (1/lambda)(d/dy - gamma d/dt), Reeb = d/dt,
// theta = dt + gamma dy with lambda^2 = 1 + x^2 and gamma' = 2 lambda^2.
class Sasakian3Provider : public FieldProvider {
 public:
  FieldSample sample(std::span<const double> point, int order) const override {
    Jet x = Jet::variable(3, order, 0, point[0]);
    Jet lam2 = 1.0 + x * x;
    Jet lam_inv = pow(lam2, -1, 2);
    Jet gamma = x * 2.0 + x * x * x * (2.0 / 3.0);
    Jet zero = Jet::constant(3, order, 0.0);
    FieldSample out;
    out.frame = {{lam_inv, zero, zero},
                 {zero, lam_inv, -(gamma * lam_inv)},
                 {zero, zero, Jet::constant(3, order, 1.0)}};
    out.eta = {zero, gamma, Jet::constant(3, order, 1.0)};
    return out;
  }
};

}  // namespace

StructureSpec sasakian3_spec() {
  StructureSpec spec;
  spec.name = "sasakian3";
  spec.n = 1;
  spec.mode = Mode::cr;
  spec.coords = {"x", "y", "t"};
  spec.fields = std::make_shared<Sasakian3Provider>();
  return spec;
}

// --- Cayley transform and inversion ---

CayleyImage cayley(std::span<const double> hs_point, int n, double guard) {
  const int ad = 2 * n + 2;
  if (static_cast<int>(hs_point.size()) != ad)
    throw ArityError("cayley: ambient point has wrong dimension");
  const double x0 = hs_point[0], y0 = hs_point[1];
  const double D = (1.0 + x0) * (1.0 + x0) - y0 * y0;
  if (std::abs(D) < guard)
    throw NearSingularSet("cayley: point within guard of the singular set");
  CayleyImage img;
  img.pullback_factor = 1.0 / D;
  img.group_point.assign(2 * n + 1, 0.0);
  for (int k = 1; k <= n; ++k) {
    const double xk = hs_point[2 * k], yk = hs_point[2 * k + 1];
    img.group_point[k - 1] = (xk * (1.0 + x0) - yk * y0) / D;
    img.group_point[n + k - 1] = (yk * (1.0 + x0) - xk * y0) / D;
  }
  img.group_point[2 * n] = 2.0 * y0 / D;
  return img;
}

std::vector<double> hyperboloid_chart_to_ambient(int n, std::span<const double> chart) {
  const int cd = 2 * n + 1;
  if (static_cast<int>(chart.size()) != cd)
    throw ArityError("chart point has wrong dimension");
  double rad = 1.0;
  for (int i = 0; i < cd; ++i) {
    const bool is_y = (i % 2 == 0);  // chart order: y0, x1, y1, ...
    rad += (is_y ? 1.0 : -1.0) * chart[i] * chart[i];
  }
  if (rad <= 0.0) throw ChartDomain("chart point outside the graph chart");
  std::vector<double> amb(2 * n + 2);
  amb[0] = std::sqrt(rad);
  for (int i = 0; i < cd; ++i) amb[i + 1] = chart[i];
  return amb;
}

double cayley_pullback_residual(int n, std::span<const double> chart_point) {
  const int cd = 2 * n + 1;
  StructureSpec hs = hyperboloid_spec(n);
  StructureEval ev = evaluate(hs, chart_point, 1);

  // Cayley component jets as functions of the chart coordinates.
  std::vector<Jet> q(cd);
  for (int i = 0; i < cd; ++i) q[i] = Jet::variable(cd, 1, i, chart_point[i]);
  Jet rad = Jet::constant(cd, 1, 1.0);
  for (int i = 0; i < cd; ++i) {
    const bool is_y = (i % 2 == 0);
    if (is_y)
      rad += q[i] * q[i];
    else
      rad -= q[i] * q[i];
  }
  Jet x0 = pow(rad, 1, 2);
  Jet y0j = q[0];
  Jet D = (1.0 + x0) * (1.0 + x0) - y0j * y0j;
  if (std::abs(D.value()) < 1e-6)
    throw NearSingularSet("cayley pullback: chart point maps near the singular set");
  Jet Dinv = inverse(D);
  std::vector<Jet> u(n + 1), v(n + 1);  // index 1..n used
  for (int k = 1; k <= n; ++k) {
    Jet xk = q[2 * k - 1], yk = q[2 * k];
    u[k] = (xk * (1.0 + x0) - yk * y0j) * Dinv;
    v[k] = (yk * (1.0 + x0) - xk * y0j) * Dinv;
  }
  Jet t = y0j * 2.0 * Dinv;

  // C^* Theta (d q_i component): -dt/2 - sum(u_k dv_k - v_k du_k) pulled back.
  double resid = 0.0, scale = 1.0;
  for (int i = 0; i < cd; ++i) {
    double comp = -0.5 * derivative(t, i).value();
    for (int k = 1; k <= n; ++k) {
      comp -= u[k].value() * derivative(v[k], i).value();
      comp += v[k].value() * derivative(u[k], i).value();
    }
    const double expect = Dinv.value() * ev.fields.eta[i].value();
    resid = std::max(resid, std::abs(comp - expect));
    scale = std::max({scale, std::abs(comp), std::abs(expect)});
  }
  return resid / scale;
}

double cayley_pcr_residual(int n, std::span<const double> ambient_point, double guard) {
  const int ad = 2 * n + 2;
  if (static_cast<int>(ambient_point.size()) != ad)
    throw ArityError("ambient point has wrong dimension");
  std::vector<Jet> p(ad);
  for (int j = 0; j < ad; ++j) p[j] = Jet::variable(ad, 1, j, ambient_point[j]);
  Jet x0 = p[0], y0 = p[1];
  Jet D = (1.0 + x0) * (1.0 + x0) - y0 * y0;
  if (std::abs(D.value()) < guard)
    throw NearSingularSet("cayley extension: point within guard of the singular set");
  Jet Dinv = inverse(D);

  // image components (u_0, v_0, u_1, v_1, ..., u_n, v_n); the vertical
  // coordinate carries the t -> -t reflection that matches the frame
  // convention, which is what makes the extension paraholomorphic while
  // keeping the ball-to-domain membership intact
  std::vector<Jet> u(n + 1), v(n + 1);
  u[0] = y0 * (-2.0) * Dinv;
  Jet num_v0 = 1.0 - x0 * x0 + y0 * y0;
  v[0] = num_v0 * Dinv;
  for (int k = 1; k <= n; ++k) {
    Jet xk = p[2 * k], yk = p[2 * k + 1];
    u[k] = (xk * (1.0 + x0) - yk * y0) * Dinv;
    v[k] = (yk * (1.0 + x0) - xk * y0) * Dinv;
  }

  // para Cauchy-Riemann: du_k/dx_j = dv_k/dy_j and du_k/dy_j = dv_k/dx_j
  double resid = 0.0, scale = 1.0;
  for (int k = 0; k <= n; ++k) {
    for (int j = 0; j <= n; ++j) {
      const double ux = derivative(u[k], 2 * j).value();
      const double uy = derivative(u[k], 2 * j + 1).value();
      const double vx = derivative(v[k], 2 * j).value();
      const double vy = derivative(v[k], 2 * j + 1).value();
      resid = std::max({resid, std::abs(ux - vy), std::abs(uy - vx)});
      scale = std::max({scale, std::abs(ux), std::abs(uy), std::abs(vx), std::abs(vy)});
    }
  }
  return resid / scale;
}

std::vector<double> inversion(std::span<const double> p, int n, double guard) {
  const int d = 2 * n + 1;
  if (static_cast<int>(p.size()) != d) throw ArityError("group point has wrong dimension");
  double q2 = 0.0;
  for (int k = 0; k < n; ++k) q2 += p[k] * p[k] - p[n + k] * p[n + k];
  const double t = p[2 * n];
  const double rho = q2 * q2 - t * t;
  if (std::abs(rho) < guard)
    throw NearSingularSet("inversion: point within guard of the singular set");
  std::vector<double> out(d);
  for (int k = 0; k < n; ++k) {
    out[k] = -(q2 * p[k] + t * p[n + k]) / rho;
    out[n + k] = -(q2 * p[n + k] + t * p[k]) / rho;
  }
  out[2 * n] = -t / rho;
  return out;
}

std::vector<Jet> inversion_jets(std::span<const Jet> p, int n, double guard) {
  const int d = 2 * n + 1;
  if (static_cast<int>(p.size()) != d) throw ArityError("group point has wrong dimension");
  Jet q2 = p[0] * p[0];
  for (int k = 1; k < n; ++k) q2 += p[k] * p[k];
  for (int k = 0; k < n; ++k) q2 -= p[n + k] * p[n + k];
  const Jet& t = p[2 * n];
  Jet rho = q2 * q2 - t * t;
  if (std::abs(rho.value()) < guard)
    throw NearSingularSet("inversion: point within guard of the singular set");
  Jet rho_inv = inverse(rho);
  std::vector<Jet> out(d);
  for (int k = 0; k < n; ++k) {
    out[k] = -((q2 * p[k] + t * p[n + k]) * rho_inv);
    out[n + k] = -((q2 * p[n + k] + t * p[k]) * rho_inv);
  }
  out[2 * n] = -(t * rho_inv);
  return out;
}

std::vector<double> group_multiply(std::span<const double> a,
                                   std::span<const double> b, int n) {
  const int d = 2 * n + 1;
  std::vector<double> out(d);
  double twist = 0.0;
  for (int k = 0; k < n; ++k) {
    out[k] = a[k] + b[k];
    out[n + k] = a[n + k] + b[n + k];
    twist += a[k] * b[n + k] - a[n + k] * b[k];
  }
  out[2 * n] = a[2 * n] + b[2 * n] - 2.0 * twist;
  return out;
}

std::vector<Jet> left_translate_jets(std::span<const double> g0,
                                     std::span<const Jet> p, int n) {
  const int d = 2 * n + 1;
  std::vector<Jet> out(d);
  Jet twist = Jet::constant(p[0].nvars(), p[0].order(), 0.0);
  for (int k = 0; k < n; ++k) {
    out[k] = p[k] + g0[k];
    out[n + k] = p[n + k] + g0[n + k];
    twist += p[n + k] * g0[k] - p[k] * g0[n + k];
  }
  out[2 * n] = p[2 * n] + g0[2 * n] - twist * 2.0;
  return out;
}

}  // namespace paracontact

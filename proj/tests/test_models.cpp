#include <doctest.h>

#include <random>

#include "paracontact/curvature.hpp"
#include "paracontact/models.hpp"

using namespace paracontact;

namespace {

std::vector<double> rpoint(std::mt19937_64& rng, int dim, double w = 1.0) {
  std::uniform_real_distribution<double> dist(-w, w);
  std::vector<double> p(dim);
  for (double& x : p) x = dist(rng);
  return p;
}

std::vector<double> hs_chart_point(std::mt19937_64& rng, int n, double w = 0.7) {
  for (int tries = 0; tries < 300; ++tries) {
    std::vector<double> q = rpoint(rng, 2 * n + 1, w);
    double rad = 1.0;
    for (int i = 0; i < 2 * n + 1; ++i) rad += (i % 2 == 0 ? 1.0 : -1.0) * q[i] * q[i];
    if (rad > 0.4) return q;
  }
  return std::vector<double>(2 * n + 1, 0.0);
}

Polynomial random_perturbation(std::mt19937_64& rng, int dim, double size) {
  // degree 3..4 polynomial, coefficients of magnitude `size`
  std::uniform_real_distribution<double> dist(-size, size);
  std::uniform_int_distribution<int> pick(0, dim - 1);
  Polynomial p;
  for (int k = 0; k < 4; ++k) {
    Monomial m;
    m.coeff = dist(rng);
    m.expo.assign(dim, 0);
    m.expo[pick(rng)] += 1;
    m.expo[pick(rng)] += 1;
    m.expo[pick(rng)] += 1;
    if (k % 2 == 0) m.expo[pick(rng)] += 1;
    p.push_back(m);
  }
  return p;
}

}  // namespace

TEST_CASE("Cayley transform: pole image and pullback factor") {
  std::vector<double> pole{1.0, 0.0, 0.0, 0.0};  // n = 1 ambient
  CayleyImage img = cayley(pole, 1);
  CHECK(img.pullback_factor == doctest::Approx(0.25));
  for (double c : img.group_point) CHECK(c == doctest::Approx(0.0));

  std::vector<double> near_sing{-1.0, 0.0, 1.0, 0.0};  // (1+x_0)^2 = y_0^2 = 0
  CHECK_THROWS_AS(cayley(near_sing, 1), NearSingularSet);
}

TEST_CASE("Cayley transform: contact form pullback identity") {
  std::mt19937_64 rng(3);
  for (int n : {1, 2}) {
    int checked = 0;
    while (checked < 10) {
      std::vector<double> q = hs_chart_point(rng, n);
      try {
        CHECK(cayley_pullback_residual(n, q) < 1e-9);
        ++checked;
      } catch (const NearSingularSet&) {
      }
    }
  }
}

TEST_CASE("Cayley extension satisfies the para Cauchy-Riemann equations") {
  std::mt19937_64 rng(5);
  for (int n : {1, 2}) {
    int checked = 0;
    while (checked < 10) {
      std::vector<double> amb = rpoint(rng, 2 * n + 2, 0.8);
      try {
        CHECK(cayley_pcr_residual(n, amb) < 1e-9);
        ++checked;
      } catch (const NearSingularSet&) {
      }
    }
  }
}

TEST_CASE("hyperboloid chart center validation") {
  std::vector<double> good{1.0, 0.0, 0.0, 0.0};
  CHECK_NOTHROW(hyperboloid_spec(1, good));
  std::vector<double> off{1.1, 0.0, 0.0, 0.0};
  CHECK_THROWS_AS(hyperboloid_spec(1, off), ChartDomain);
  std::vector<double> chart_pt{0.0, 2.0, 0.0};  // radicand 1 - x_1^2 < 0
  StructureSpec hs = hyperboloid_spec(1);
  CHECK_THROWS_AS(evaluate(hs, chart_pt, 2), ChartDomain);
}

TEST_CASE("perturbed hyperboloid: valid structure with nonzero invariants") {
  std::mt19937_64 rng(42);
  // n = 2: conformal curvature is the obstruction
  {
    Polynomial P = random_perturbation(rng, 5, 0.1);
    StructureSpec spec = perturbed_hyperboloid_spec(2, P);
    std::vector<double> q = hs_chart_point(rng, 2, 0.5);
    StructureEval ev = evaluate(spec, q, 3);
    CHECK(check_compatibility(ev).max_residual() < 1e-9);
    Connection conn = solve_connection(ev);
    CurvatureData curv = curvature_tensor(conn, ev);
    InvariantTensors inv = invariant_tensors(curv, conn, ev);
    CHECK(inv.Wpc.max_abs_value() > 1e-3);
    // trace-freeness of PW holds on any integrable structure
    ResidualReport rep = conformal_curvature_residuals(curv, inv, ev, 1e-8);
    CHECK(rep.max_residual("PW_trace") < 1e-8);
  }
  // n = 1: the symmetric F tensor is the obstruction
  {
    Polynomial P = random_perturbation(rng, 3, 0.1);
    StructureSpec spec = perturbed_hyperboloid_spec(1, P);
    std::vector<double> q = hs_chart_point(rng, 1, 0.5);
    StructureEval ev = evaluate(spec, q, 4);
    CHECK(check_compatibility(ev).max_residual() < 1e-9);
    Connection conn = solve_connection(ev);
    CurvatureData curv = curvature_tensor(conn, ev);
    InvariantTensors inv = invariant_tensors(curv, conn, ev, true, true);
    CHECK(inv.F.max_abs_value() > 1e-3);
  }
}

TEST_CASE("group law is consistent with the left-invariant frame") {
  // pushing the frame along a left translation reproduces the frame
  std::mt19937_64 rng(11);
  const int n = 2;
  StructureSpec spec = heisenberg_spec(n);
  std::vector<double> g0 = rpoint(rng, spec.dim());
  std::vector<double> p = rpoint(rng, spec.dim());

  // columns of the Jacobian of L_{g0} applied to frame vectors at p must
  // equal the frame at g0 o p
  const int d = spec.dim();
  std::vector<Jet> pj(d);
  for (int i = 0; i < d; ++i) pj[i] = Jet::variable(d, 1, i, p[i]);
  std::vector<Jet> image = left_translate_jets(g0, pj, n);
  StructureEval evp = evaluate(spec, p, 1);
  std::vector<double> q = group_multiply(g0, p, n);
  StructureEval evq = evaluate(spec, q, 1);
  for (int A = 0; A < d; ++A) {
    for (int i = 0; i < d; ++i) {
      double pushed = 0.0;
      for (int j = 0; j < d; ++j)
        pushed += derivative(image[i], j).value() * evp.fields.frame[A][j].value();
      CHECK(pushed == doctest::Approx(evq.fields.frame[A][i].value()).epsilon(1e-12));
    }
  }
}

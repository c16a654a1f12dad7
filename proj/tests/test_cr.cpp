#include <doctest.h>

#include <random>

#include "paracontact/cr.hpp"
#include "paracontact/models.hpp"

using namespace paracontact;

namespace {

std::vector<double> rpoint(std::mt19937_64& rng, int dim, double w = 1.0) {
  std::uniform_real_distribution<double> dist(-w, w);
  std::vector<double> p(dim);
  for (double& x : p) x = dist(rng);
  return p;
}

std::vector<double> sphere_chart_point(std::mt19937_64& rng, int n, double w = 0.4) {
  for (int tries = 0; tries < 300; ++tries) {
    std::vector<double> q = rpoint(rng, 2 * n + 1, w);
    double rad = 1.0;
    for (double c : q) rad -= c * c;
    if (rad > 0.3) return q;
  }
  return std::vector<double>(2 * n + 1, 0.0);
}

}  // namespace

TEST_CASE("CR Heisenberg group: flat Webster connection") {
  std::mt19937_64 rng(3);
  for (int n : {1, 2}) {
    StructureSpec spec = cr_heisenberg_spec(n);
    StructureEval ev = evaluate(spec, rpoint(rng, spec.dim()), 3);
    CHECK(check_compatibility(ev).max_residual() < 1e-12);
    Connection conn = webster_connection(ev);
    CHECK(conn.gamma.max_abs_coeff() < 1e-12);
    CHECK(conn.tau.max_abs_coeff() < 1e-12);
    CHECK(connection_axiom_residuals(conn, ev).max_residual() < 1e-9);
  }
}

TEST_CASE("round sphere: Sasakian with positive constant Webster scalar") {
  std::mt19937_64 rng(7);
  StructureSpec spec = sphere_spec(1);
  double first = 0.0;
  for (int i = 0; i < 10; ++i) {
    std::vector<double> q = sphere_chart_point(rng, 1);
    StructureEval ev = evaluate(spec, q, 3);
    CHECK(check_compatibility(ev).max_residual() < 1e-9);
    Connection conn = webster_connection(ev);
    CHECK(connection_axiom_residuals(conn, ev).max_residual() < 1e-9);
    CHECK(conn.tau.max_abs_value() < 1e-10);  // A = 0
    CurvatureData curv = curvature_tensor(conn, ev);
    if (i == 0) first = curv.scal.value();
    CHECK(curv.scal.value() > 0.0);
    CHECK(curv.scal.value() == doctest::Approx(first).epsilon(1e-9));
  }
  // cross-check the value against the Riemannian scalar of the round metric,
  // an independent route: Scal_g = 6 on the unit three-sphere and the
  // real-trace Webster scalar satisfies Scal_cr = Scal_g + 2n
  SasakianComparison cmp =
      sasakian_comparison(spec, sphere_chart_point(rng, 1), 4);
  CHECK(cmp.scal_g == doctest::Approx(6.0).epsilon(1e-8));
  CHECK(cmp.scal_cr == doctest::Approx(8.0).epsilon(1e-8));
  CHECK(cmp.relation_residual < 1e-9);
}

TEST_CASE("F tensor vanishes on both flat and round models") {
  std::mt19937_64 rng(11);
  {
    StructureSpec spec = cr_heisenberg_spec(1);
    StructureEval ev = evaluate(spec, rpoint(rng, 3), 4);
    Connection conn = webster_connection(ev);
    CurvatureData curv = curvature_tensor(conn, ev);
    CHECK(f_car_tensor(curv, conn, ev).max_abs_value() < 1e-10);
  }
  {
    StructureSpec spec = sphere_spec(1);
    StructureEval ev = evaluate(spec, sphere_chart_point(rng, 1), 4);
    Connection conn = webster_connection(ev);
    CurvatureData curv = curvature_tensor(conn, ev);
    CHECK(f_car_tensor(curv, conn, ev).max_abs_value() < 1e-9);
  }
}

TEST_CASE("Sasakian surface bundle: nonconstant Webster scalar, corollary chain") {
  StructureSpec spec = sasakian3_spec();
  std::mt19937_64 rng(13);
  std::vector<double> values;
  for (int i = 0; i < 3; ++i) {
    std::vector<double> pt = rpoint(rng, 3, 0.5);
    StructureEval ev = evaluate(spec, pt, 4);
    CHECK(check_compatibility(ev).max_residual() < 1e-10);
    Connection conn = webster_connection(ev);
    CHECK(connection_axiom_residuals(conn, ev).max_residual() < 1e-9);
    CHECK(conn.tau.max_abs_value() < 1e-10);  // Sasakian

    SasakianComparison cmp = sasakian_comparison(spec, pt, 4);
    values.push_back(cmp.scal_cr);
    CHECK(cmp.relation_residual < 1e-9);     // Scal_cr = Scal_g + 2n (real trace)
    CHECK(std::abs(cmp.reeb_derivative) < 1e-9);
    CHECK(cmp.fcar_vs_hessian < 1e-7);       // F reduces to the J-Hessian form
  }
  // the Webster scalar actually varies on this example
  CHECK(std::abs(values[0] - values[1]) + std::abs(values[1] - values[2]) > 1e-3);
}

TEST_CASE("F tensor outside dimension three is a mode error") {
  std::mt19937_64 rng(19);
  StructureSpec spec = cr_heisenberg_spec(2);
  StructureEval ev = evaluate(spec, rpoint(rng, 5), 4);
  Connection conn = webster_connection(ev);
  CurvatureData curv = curvature_tensor(conn, ev);
  CHECK_THROWS_AS(f_car_tensor(curv, conn, ev), ModeError);
}

TEST_CASE("corrupted CR structure fails the axiom solve") {
  StructureSpec spec = cr_heisenberg_spec(2);
  const auto* poly = dynamic_cast<const PolynomialProvider*>(spec.fields.get());
  auto frame = poly->frame_fns();
  auto eta = poly->eta_fns();
  // Y_1 -> Y_1 + 0.5 x_2 X_2: breaks integrability of J
  frame[2][1].num.push_back({0.5, {0, 1, 0, 0, 0}});
  frame[2][4].num.push_back({1.0, {0, 1, 0, 1, 0}});
  StructureSpec bad = spec;
  bad.fields = std::make_shared<PolynomialProvider>(frame, eta);
  std::vector<double> pt{0.3, 0.5, -0.2, 0.4, 0.1};
  StructureEval ev = evaluate(bad, pt, 2);
  CHECK_THROWS_AS(webster_connection(ev), AxiomInconsistency);
}

TEST_CASE("invariant tensors are rejected in CR mode") {
  std::mt19937_64 rng(17);
  StructureSpec spec = cr_heisenberg_spec(1);
  StructureEval ev = evaluate(spec, rpoint(rng, 3), 3);
  Connection conn = webster_connection(ev);
  CurvatureData curv = curvature_tensor(conn, ev);
  CHECK_THROWS_AS(invariant_tensors(curv, conn, ev), ModeError);
}

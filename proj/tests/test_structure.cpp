#include <doctest.h>

#include <random>

#include "paracontact/models.hpp"
#include "paracontact/structure.hpp"

using namespace paracontact;

namespace {

std::vector<double> random_point(std::mt19937_64& rng, int dim, double half_width = 1.0) {
  std::uniform_real_distribution<double> dist(-half_width, half_width);
  std::vector<double> p(dim);
  for (double& x : p) x = dist(rng);
  return p;
}

std::vector<double> random_hyperboloid_chart_point(std::mt19937_64& rng, int n) {
  // keep the graph-chart radicand bounded away from zero
  for (int tries = 0; tries < 200; ++tries) {
    std::vector<double> q = random_point(rng, 2 * n + 1, 0.8);
    double rad = 1.0;
    for (int i = 0; i < 2 * n + 1; ++i)
      rad += (i % 2 == 0 ? 1.0 : -1.0) * q[i] * q[i];
    if (rad > 0.3) return q;
  }
  FAIL("could not sample a chart point");
  return {};
}

}  // namespace

TEST_CASE("hyperbolic Heisenberg group: exact structure functions") {
  for (int n : {1, 2}) {
    StructureSpec spec = heisenberg_spec(n);
    std::mt19937_64 rng(11);
    std::vector<double> pt = random_point(rng, spec.dim());
    StructureEval ev = evaluate(spec, pt, 3);

    // [U_k, V_k] = -2 Reeb; everything else vanishes
    for (int A = 0; A < ev.dim(); ++A)
      for (int B = 0; B < ev.dim(); ++B)
        for (int C = 0; C < ev.dim(); ++C) {
          const double expect =
              (A < n && B == n + A && C == ev.reeb()) ? -2.0 :
              (B < n && A == n + B && C == ev.reeb()) ? 2.0 : 0.0;
          CHECK(ev.cfun(A, B, C).value() == doctest::Approx(expect).epsilon(1e-13));
        }

    // eta(Reeb) = -1 as a constant jet
    Jet er = ev.eta_on_field(ev.reeb());
    CHECK(er.value() == doctest::Approx(-1.0));
    CHECK((er - er.value()).max_abs_coeff() < 1e-14);

    ResidualReport rep = check_compatibility(ev);
    CHECK(rep.all_pass());
    CHECK(rep.max_residual() < 1e-13);
  }
}

TEST_CASE("compatibility residuals on built-in specs at seeded points") {
  std::mt19937_64 rng(42);
  for (int n : {1, 2}) {
    StructureSpec flat = heisenberg_spec(n);
    for (int i = 0; i < 20; ++i) {
      StructureEval ev = evaluate(flat, random_point(rng, flat.dim()), 2);
      CHECK(check_compatibility(ev).max_residual() < 1e-9);
    }
    StructureSpec hs = hyperboloid_spec(n);
    for (int i = 0; i < 20; ++i) {
      auto q = random_hyperboloid_chart_point(rng, n);
      StructureEval ev = evaluate(hs, q, 2);
      ResidualReport rep = check_compatibility(ev);
      INFO("hyperboloid n=", n, " case");
      CHECK(rep.max_residual() < 1e-9);
    }
  }
}

TEST_CASE("hyperboloid: eta(Reeb) = -1 at the chart center and off center") {
  StructureSpec hs = hyperboloid_spec(2);
  std::vector<double> center(hs.dim(), 0.0);  // ambient (1, 0, ..., 0)
  StructureEval ev = evaluate(hs, center, 2);
  CHECK(ev.eta_on_field(ev.reeb()).value() == doctest::Approx(-1.0));

  std::mt19937_64 rng(3);
  auto q = random_hyperboloid_chart_point(rng, 2);
  StructureEval ev2 = evaluate(hs, q, 2);
  CHECK(ev2.eta_on_field(ev2.reeb()).value() == doctest::Approx(-1.0).epsilon(1e-10));
}

TEST_CASE("structure functions reproduce brackets coefficient-wise") {
  StructureSpec hs = hyperboloid_spec(1);
  std::mt19937_64 rng(5);
  auto q = random_hyperboloid_chart_point(rng, 1);
  StructureEval ev = evaluate(hs, q, 3);
  const int d = ev.dim();
  const int bord = ev.order - 1;
  for (int A = 0; A < d; ++A)
    for (int B = A + 1; B < d; ++B) {
      for (int i = 0; i < d; ++i) {
        Jet br = Jet::constant(d, bord, 0.0);
        for (int j = 0; j < d; ++j) {
          br += truncated(ev.fields.frame[A][j], bord) *
                derivative(ev.fields.frame[B][i], j);
          br -= truncated(ev.fields.frame[B][j], bord) *
                derivative(ev.fields.frame[A][i], j);
        }
        Jet recon = Jet::constant(d, bord, 0.0);
        for (int C = 0; C < d; ++C)
          recon += ev.cfun(A, B, C) * truncated(ev.fields.frame[C][i], bord);
        CHECK((br - recon).max_abs_coeff() < 1e-10);
      }
    }
}

TEST_CASE("corrupted pairing shows up in the Nijenhuis residual") {
  // mix V_1 with a coordinate-dependent multiple of U_2: still horizontal for
  // eta, but the frame pairing I U_1 = V_1' is no longer integrable
  StructureSpec spec = heisenberg_spec(2);
  const auto* poly = dynamic_cast<const PolynomialProvider*>(spec.fields.get());
  REQUIRE(poly != nullptr);
  auto frame = poly->frame_fns();
  auto eta = poly->eta_fns();
  // V_1 -> V_1 + 0.5 u_2 U_2, with U_2 = d/du_2 + 2 v_2 d/dt
  frame[2][1].num.push_back({0.5, {0, 1, 0, 0, 0}});
  frame[2][4].num.push_back({1.0, {0, 1, 0, 1, 0}});
  StructureSpec bad = spec;
  bad.fields = std::make_shared<PolynomialProvider>(frame, eta);

  std::vector<double> pt{0.3, 0.5, -0.2, 0.4, 0.1};
  StructureEval ev = evaluate(bad, pt, 2);
  ResidualReport rep = check_compatibility(ev);
  double nij = 0.0;
  for (const auto& c : rep.cases)
    if (c.name == "nijenhuis") nij = c.residual;
  CHECK(nij > 0.1);
}

TEST_CASE("degenerate frames are rejected") {
  StructureSpec spec = heisenberg_spec(1);
  const auto* poly = dynamic_cast<const PolynomialProvider*>(spec.fields.get());
  auto frame = poly->frame_fns();
  auto eta = poly->eta_fns();
  frame[1] = frame[0];  // V_1 duplicates U_1: singular frame matrix
  StructureSpec bad = spec;
  bad.fields = std::make_shared<PolynomialProvider>(frame, eta);
  std::vector<double> pt{0.1, 0.2, 0.3};
  CHECK_THROWS_AS(evaluate(bad, pt, 2), FrameDegenerate);
}

TEST_CASE("signed trace rejects wrong arity") {
  StructureSpec spec = heisenberg_spec(1);
  std::vector<double> pt{0.1, 0.2, 0.3};
  StructureEval ev = evaluate(spec, pt, 2);
  JetTensor t1 = JetTensor::zeros({3}, 3, 1);
  CHECK_THROWS_AS(signed_trace(t1, ev), ArityError);
  JetTensor t2 = JetTensor::zeros({1, 1}, 3, 1);
  CHECK_THROWS_AS(signed_pair_trace(t2, ev), ArityError);
}

TEST_CASE("signed traces follow the summation convention") {
  StructureSpec spec = heisenberg_spec(2);
  std::vector<double> pt(spec.dim(), 0.1);
  StructureEval ev = evaluate(spec, pt, 2);
  const int hd = ev.hdim();

  JetTensor g = JetTensor::zeros({hd, hd}, ev.dim(), 1);
  JetTensor om = JetTensor::zeros({hd, hd}, ev.dim(), 1);
  for (int a = 0; a < hd; ++a)
    for (int b = 0; b < hd; ++b) {
      g(a, b) = Jet::constant(ev.dim(), 1, ev.g(a, b));
      om(a, b) = Jet::constant(ev.dim(), 1, ev.omega(a, b));
    }
  CHECK(signed_trace(g, ev).value() == doctest::Approx(2.0 * ev.n));
  CHECK(signed_trace(om, ev).value() == doctest::Approx(0.0));
  CHECK(signed_pair_trace(om, ev).value() == doctest::Approx(-2.0 * ev.n));
  CHECK(signed_pair_trace(g, ev).value() == doctest::Approx(0.0));
}

TEST_CASE("spec JSON round trip") {
  StructureSpec spec = heisenberg_spec(1);
  nlohmann::json j = spec_to_json(spec);
  StructureSpec back = spec_from_json(j);
  std::vector<double> pt{0.2, -0.3, 0.5};
  StructureEval a = evaluate(spec, pt, 2);
  StructureEval b = evaluate(back, pt, 2);
  for (int A = 0; A < a.dim(); ++A)
    for (int i = 0; i < a.dim(); ++i)
      CHECK((a.fields.frame[A][i] - b.fields.frame[A][i]).max_abs_coeff() == 0.0);
  CHECK(check_compatibility(b).all_pass());
}

#include <doctest.h>

#include <cmath>
#include <random>

#include "paracontact/models.hpp"
#include "paracontact/yamabe.hpp"

using namespace paracontact;

namespace {

std::vector<double> sample_off_singular(std::mt19937_64& rng,
                                        const GroupFunction& phi, int n,
                                        double margin = 0.1) {
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  for (int tries = 0; tries < 500; ++tries) {
    std::vector<double> p(2 * n + 1);
    for (double& x : p) x = dist(rng);
    if (!phi.singular_margin || phi.singular_margin(p) > margin) return p;
  }
  FAIL("no point off the singular set found");
  return {};
}

Polynomial mono(int dim, std::initializer_list<std::pair<int, int>> ve,
                double c = 1.0) {
  Monomial m;
  m.coeff = c;
  m.expo.assign(dim, 0);
  for (auto [v, e] : ve) m.expo[v] = e;
  return {m};
}

}  // namespace

TEST_CASE("the ultrahyperbolic operator annihilates the expected monomials") {
  const int n = 1;
  std::vector<double> p{0.3, 0.1, 0.2};
  CHECK(ultrahyperbolic_L(polynomial_fn(n, mono(3, {{2, 1}})), p) ==
        doctest::Approx(0.0));  // t
  CHECK(ultrahyperbolic_L(polynomial_fn(n, mono(3, {{0, 1}})), p) ==
        doctest::Approx(0.0));  // u_1
  CHECK(ultrahyperbolic_L(polynomial_fn(n, mono(3, {{0, 2}})), p) ==
        doctest::Approx(2.0));  // u_1^2
  CHECK(ultrahyperbolic_L(polynomial_fn(n, mono(3, {{1, 2}})), p) ==
        doctest::Approx(-2.0));  // v_1^2
  // u_1^2 + v_1^2 is annihilated
  Polynomial s = polynomial_sum(mono(3, {{0, 2}}), mono(3, {{1, 2}}));
  CHECK(ultrahyperbolic_L(polynomial_fn(n, s), p) == doctest::Approx(0.0));

  // u_1 v_2 for n = 2
  std::vector<double> p2{0.3, -0.2, 0.1, 0.4, 0.2};
  CHECK(ultrahyperbolic_L(polynomial_fn(2, mono(5, {{0, 1}, {3, 1}})), p2) ==
        doctest::Approx(0.0));
}

TEST_CASE("L f = -4 n^2 f^{(n+2)/n} for the basic solution") {
  // frozen check at the reference point, then random points
  const int n = 1;
  GroupFunction f = f_standard(n);
  std::vector<double> p{0.3, 0.1, 0.2};
  const double lf = ultrahyperbolic_L(f, p);
  const double fv = f.at(p, 0).value();
  CHECK(lf == doctest::Approx(-4.0 * fv * fv * fv).epsilon(1e-11));

  std::mt19937_64 rng(2);
  for (int nn : {1, 2, 3}) {
    GroupFunction fn = f_standard(nn);
    for (int i = 0; i < 5; ++i) {
      std::vector<double> q = sample_off_singular(rng, fn, nn);
      const double l = ultrahyperbolic_L(fn, q);
      const double v = fn.at(q, 0).value();
      const double rhs = -4.0 * nn * nn * std::pow(v, (nn + 2.0) / nn);
      CHECK(l == doctest::Approx(rhs).epsilon(1e-9));
    }
  }
}

TEST_CASE("phi_eps values and the Yamabe equation") {
  std::vector<double> origin{0.0, 0.0, 0.0};
  CHECK(phi_epsilon(1, 1.0, origin) == doctest::Approx(2.0));
  std::vector<double> origin2{0.0, 0.0, 0.0, 0.0, 0.0};
  CHECK(phi_epsilon(2, 1.0, origin2) == doctest::Approx(16.0));

  std::mt19937_64 rng(7);
  for (int n : {1, 2, 3}) {
    for (double eps : {0.5, 1.0, 2.0}) {
      GroupFunction phi = phi_epsilon_fn(n, eps);
      for (int i = 0; i < 10; ++i) {
        std::vector<double> p = sample_off_singular(rng, phi, n);
        CHECK(yamabe_residual(phi, n, p) < 1e-9);
      }
    }
  }
}

TEST_CASE("the two vertical sign conventions give the same residuals") {
  std::mt19937_64 rng(11);
  GroupFunction phi = phi_epsilon_fn(2, 1.0);
  for (int i = 0; i < 5; ++i) {
    std::vector<double> p = sample_off_singular(rng, phi, 2);
    CHECK(yamabe_residual(phi, 2, p, FrameConvention::plus) < 1e-9);
    CHECK(yamabe_residual(phi, 2, p, FrameConvention::minus) < 1e-9);
  }
}

TEST_CASE("singular-set preconditions") {
  // (eps^2 + |u|^2 - |v|^2)^2 = t^2
  std::vector<double> bad{0.0, 0.0, 1.0};  // eps = 1: (1)^2 - 1 = 0
  CHECK_THROWS_AS(phi_epsilon(1, 1.0, bad), NearSingularSet);
  std::vector<double> xi_pt{1.0, 0.0, 1.0};  // |u|^2-|v|^2 = 1 = |t|
  CHECK_THROWS_AS(inversion(xi_pt, 1), NearSingularSet);
}

TEST_CASE("inversion: involution and the closed-form special case") {
  std::mt19937_64 rng(13);
  GroupFunction guard = kelvin(constant_fn(2, 1.0), 2);  // margin = inversion's
  for (int i = 0; i < 10; ++i) {
    std::vector<double> p = sample_off_singular(rng, guard, 2);
    std::vector<double> pp = inversion(inversion(p, 2), 2);
    for (int c = 0; c < 5; ++c) CHECK(pp[c] == doctest::Approx(p[c]).epsilon(1e-10));
  }
  // |u|^2 - |v|^2 = 1, t = 0 maps to (-u, -v, 0)
  std::vector<double> p{1.25, 0.75, 0.0};  // 1.25^2 - 0.75^2 = 1
  std::vector<double> q = inversion(p, 1);
  CHECK(q[0] == doctest::Approx(-1.25));
  CHECK(q[1] == doctest::Approx(-0.75));
  CHECK(q[2] == doctest::Approx(0.0));
}

TEST_CASE("Kelvin transform preserves harmonic functions and the solutions") {
  std::mt19937_64 rng(17);
  const int n = 1;

  // K 1 = ((|u|^2-|v|^2)^2 - t^2)^{-1/2} and is L-harmonic
  GroupFunction k1 = kelvin(constant_fn(n, 1.0), n);
  for (int i = 0; i < 10; ++i) {
    std::vector<double> p = sample_off_singular(rng, k1, n);
    double q2 = p[0] * p[0] - p[1] * p[1];
    double rho = q2 * q2 - p[2] * p[2];
    if (rho <= 0.0) continue;  // odd n: the closed form needs a positive radicand
    CHECK(k1.at(p, 0).value() == doctest::Approx(1.0 / std::sqrt(rho)));
    CHECK(std::abs(ultrahyperbolic_L(k1, p)) < 1e-9);
  }

  // harmonic seeds: t, u_1, u_1^2 + v_1^2
  std::vector<GroupFunction> seeds{
      polynomial_fn(n, mono(3, {{2, 1}})), polynomial_fn(n, mono(3, {{0, 1}})),
      polynomial_fn(n, polynomial_sum(mono(3, {{0, 2}}), mono(3, {{1, 2}})))};
  for (const GroupFunction& s : seeds) {
    GroupFunction ks = kelvin(s, n);
    for (int i = 0; i < 10; ++i) {
      std::vector<double> p = sample_off_singular(rng, ks, n);
      const double q2 = p[0] * p[0] - p[1] * p[1];
      if (q2 * q2 - p[2] * p[2] <= 0.0) continue;  // odd-n prefactor branch
      CHECK(std::abs(ultrahyperbolic_L(ks, p)) < 1e-9);
    }
  }

  // K(phi_eps) solves the equation; K(phi_1) = phi_1 pointwise
  for (double eps : {0.5, 1.0, 2.0}) {
    GroupFunction kphi = kelvin(phi_epsilon_fn(n, eps), n);
    for (int i = 0; i < 10; ++i) {
      std::vector<double> p = sample_off_singular(rng, kphi, n);
      double q2 = p[0] * p[0] - p[1] * p[1];
      if (q2 * q2 - p[2] * p[2] <= 0.0) continue;
      CHECK(yamabe_residual(kphi, n, p) < 1e-8);
      if (eps == 1.0)
        CHECK(kphi.at(p, 0).value() ==
              doctest::Approx(phi_epsilon(n, 1.0, p)).epsilon(1e-9));
    }
  }
}

TEST_CASE("dilations: identity, equation preservation, and the family relation") {
  std::mt19937_64 rng(23);
  const int n = 1;
  GroupFunction f = f_standard(n);

  GroupFunction id = dilate(f, n, 1.0);
  std::vector<double> p = sample_off_singular(rng, f, n);
  CHECK(id.at(p, 0).value() == doctest::Approx(f.at(p, 0).value()));

  GroupFunction f2 = dilate(f, n, 2.0);
  for (int i = 0; i < 5; ++i) {
    std::vector<double> q = sample_off_singular(rng, f2, n);
    const double l = ultrahyperbolic_L(f2, q);
    const double v = f2.at(q, 0).value();
    CHECK(l == doctest::Approx(-4.0 * v * v * v).epsilon(1e-9));
  }

  // dilate(phi_1, 1/eps) = phi_eps pointwise
  for (int nn : {1, 2}) {
    for (double eps : {0.5, 2.0}) {
      GroupFunction lhs = dilate(phi_epsilon_fn(nn, 1.0), nn, 1.0 / eps);
      GroupFunction rhs = phi_epsilon_fn(nn, eps);
      for (int i = 0; i < 5; ++i) {
        std::vector<double> q = sample_off_singular(rng, lhs, nn);
        if (!rhs.singular_margin || rhs.singular_margin(q) < 0.05) continue;
        CHECK(lhs.at(q, 0).value() ==
              doctest::Approx(rhs.at(q, 0).value()).epsilon(1e-10));
      }
    }
  }
}

TEST_CASE("translations preserve the Yamabe equation") {
  std::mt19937_64 rng(29);
  for (int n : {1, 2}) {
    std::vector<double> g0(2 * n + 1);
    for (std::size_t i = 0; i < g0.size(); ++i) g0[i] = 0.1 + 0.1 * i;
    GroupFunction phi = translate(phi_epsilon_fn(n, 1.0), n, g0);
    for (int i = 0; i < 10; ++i) {
      std::vector<double> p = sample_off_singular(rng, phi, n);
      CHECK(yamabe_residual(phi, n, p) < 1e-9);
    }
  }
}

TEST_CASE("Kelvin is an involution on function values") {
  std::mt19937_64 rng(31);
  const int n = 1;
  GroupFunction phi = phi_epsilon_fn(n, 1.0);
  GroupFunction kk = kelvin(kelvin(phi, n), n);
  for (int i = 0; i < 10; ++i) {
    std::vector<double> p = sample_off_singular(rng, kk, n);
    double q2 = p[0] * p[0] - p[1] * p[1];
    if (q2 * q2 - p[2] * p[2] <= 0.0) continue;
    CHECK(kk.at(p, 0).value() ==
          doctest::Approx(phi.at(p, 0).value()).epsilon(1e-9));
  }
}

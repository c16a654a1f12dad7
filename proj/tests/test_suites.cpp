#include <doctest.h>

#include <fstream>

#include "paracontact/models.hpp"

#include "paracontact/suites.hpp"

using namespace paracontact;

TEST_CASE("u expression micro-grammar") {
  std::vector<std::string> coords{"u1", "v1", "t"};
  Polynomial p = parse_u_expression("0.3*u1*v1 - 0.1*t + u1", coords);
  REQUIRE(p.size() == 3);
  CHECK(p[0].coeff == doctest::Approx(0.3));
  CHECK(p[0].expo == std::vector<int>{1, 1, 0});
  CHECK(p[1].coeff == doctest::Approx(-0.1));
  CHECK(p[1].expo == std::vector<int>{0, 0, 1});
  CHECK(p[2].coeff == doctest::Approx(1.0));

  CHECK_THROWS_AS(parse_u_expression("0.3*w1", coords), Error);
  CHECK_THROWS_AS(parse_u_expression("0.3 u1", coords), Error);

  std::vector<double> pt{0.5, 2.0, 1.0};
  CHECK(polynomial_value(p, pt) == doctest::Approx(0.3 * 0.5 * 2.0 - 0.1 + 0.5));
}

TEST_CASE("config validation") {
  RunConfig cfg;
  cfg.suite = "nope";
  CHECK_THROWS_AS(cfg.validate(), Error);
  cfg.suite = "compat";
  cfg.n = 0;
  CHECK_THROWS_AS(cfg.validate(), Error);
  cfg.n = 2;
  cfg.tolerance = -1;
  CHECK_THROWS_AS(cfg.validate(), Error);
  cfg.tolerance = 1e-7;
  CHECK_NOTHROW(cfg.validate());
}

TEST_CASE("suites are deterministic for a fixed seed") {
  RunConfig cfg;
  cfg.suite = "cayley";
  cfg.n = 1;
  cfg.num_points = 3;
  cfg.tolerance = 1e-9;
  ResidualReport a = run_suite(cfg);
  ResidualReport b = run_suite(cfg);
  CHECK(a.to_json().dump() == b.to_json().dump());
  CHECK(a.all_pass());

  cfg.seed = 43;
  ResidualReport c = run_suite(cfg);
  CHECK(a.to_json().dump() != c.to_json().dump());  // seed actually matters
}

TEST_CASE("small smoke runs of each suite") {
  for (const std::string& name : suite_names()) {
    RunConfig cfg;
    cfg.suite = name;
    cfg.n = 1;
    cfg.num_points = 2;
    cfg.tolerance = name == "flat-group" ? 1e-10 : 1e-7;
    ResidualReport rep = run_suite(cfg);
    INFO("suite ", name);
    CHECK(rep.total() > 0);
    CHECK(rep.all_pass());
  }
}

TEST_CASE("user spec files run through the compat suite") {
  StructureSpec spec = heisenberg_spec(1);
  const std::string path = "/tmp/paracontact_spec_test.json";
  {
    std::ofstream out(path);
    out << spec_to_json(spec).dump(2);
  }
  RunConfig cfg;
  cfg.suite = "compat";
  cfg.n = 1;
  cfg.num_points = 3;
  cfg.tolerance = 1e-9;
  cfg.spec_path = path;
  ResidualReport rep = run_suite(cfg);
  CHECK(rep.total() == 3);
  CHECK(rep.all_pass());
  for (const auto& c : rep.cases) CHECK(c.name.rfind("user-spec", 0) == 0);
}

TEST_CASE("rational coefficient functions evaluate as quotients") {
  // (1 + u1^2 + 2 u1) / (1 + u1) equals 1 + u1 wherever defined
  nlohmann::json fn = {
      {"num", {{1.0, {0, 0, 0}}, {2.0, {1, 0, 0}}, {1.0, {2, 0, 0}}}},
      {"den", {{1.0, {0, 0, 0}}, {1.0, {1, 0, 0}}}}};
  StructureSpec base = heisenberg_spec(1);
  nlohmann::json j = spec_to_json(base);
  j["frame"][0][0] = fn;  // U_1 coefficient 1 replaced by the quotient
  // to keep the structure valid, rescale is wrong; instead just check the
  // evaluated jet of the quotient against the polynomial it reduces to
  StructureSpec spec = spec_from_json(j);
  std::vector<double> pt{0.3, -0.2, 0.4};
  FieldSample fs = spec.fields->sample(pt, 3);
  Jet expect = polynomial_jet(Polynomial{{1.0, {0, 0, 0}}, {1.0, {1, 0, 0}}}, pt, 3);
  CHECK((fs.frame[0][0] - expect).max_abs_coeff() < 1e-13);
}

TEST_CASE("curvature identities with the quoted deformation factor") {
  RunConfig cfg;
  cfg.suite = "prop31";
  cfg.n = 2;
  cfg.num_points = 4;
  cfg.tolerance = 1e-7;
  cfg.u_expr = "0.3*u1*v1";
  ResidualReport rep = run_suite(cfg);
  CHECK(rep.all_pass());
}

TEST_CASE("compatibility holds at twenty points for every built-in model") {
  for (int n : {1, 2}) {
    RunConfig cfg;
    cfg.suite = "compat";
    cfg.n = n;
    cfg.num_points = 20;
    cfg.tolerance = 1e-9;
    ResidualReport rep = run_suite(cfg);
    INFO("n = ", n);
    CHECK(rep.total() == 80);  // four models, twenty points each
    CHECK(rep.all_pass());
  }
}

TEST_CASE("report summary bookkeeping") {
  ResidualReport rep;
  rep.suite = "demo";
  rep.add("a", {0.0}, 1e-9, 1e-7);
  rep.add("b", {0.0}, 1e-3, 1e-7);
  rep.add_error("c", {0.0}, "boom", 1e-7);
  CHECK(rep.total() == 3);
  CHECK(rep.passed() == 1);
  CHECK_FALSE(rep.all_pass());
  auto j = rep.to_json();
  CHECK(j["summary"]["total"] == 3);
  CHECK(j["summary"]["passed"] == 1);
  CHECK(j["cases"].size() == 3);
}

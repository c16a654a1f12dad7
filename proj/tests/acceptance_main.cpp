// Acceptance suite: one pass/fail line per criterion, nonzero exit on any
// failure.  Tolerances are pinned here, not configurable.

#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "paracontact/conformal.hpp"
#include "paracontact/cr.hpp"
#include "paracontact/curvature.hpp"
#include "paracontact/models.hpp"
#include "paracontact/suites.hpp"
#include "paracontact/yamabe.hpp"

using namespace paracontact;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      if (!detail.empty()) detail += "; ";
      detail += what;
    }
  }
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2e", x);
  return buf;
}

RunConfig cfg_for(const std::string& suite, int n, int points, double tol,
                  std::uint64_t seed = 42) {
  RunConfig cfg;
  cfg.suite = suite;
  cfg.n = n;
  cfg.num_points = points;
  cfg.tolerance = tol;
  cfg.seed = seed;
  return cfg;
}

std::vector<double> hs_chart(std::mt19937_64& rng, int n, double w = 0.7) {
  std::uniform_real_distribution<double> dist(-w, w);
  for (int tries = 0; tries < 200; ++tries) {
    std::vector<double> q(2 * n + 1);
    for (double& x : q) x = dist(rng);
    double rad = 1.0;
    for (int i = 0; i < 2 * n + 1; ++i) rad += (i % 2 == 0 ? 1.0 : -1.0) * q[i] * q[i];
    if (rad > 0.35) return q;
  }
  return std::vector<double>(2 * n + 1, 0.0);
}

std::vector<double> box(std::mt19937_64& rng, int dim, double w = 0.8) {
  std::uniform_real_distribution<double> dist(-w, w);
  std::vector<double> p(dim);
  for (double& x : p) x = dist(rng);
  return p;
}

ConformalFactor seeded_factor(std::mt19937_64& rng, int dim, double scale = 0.4) {
  std::uniform_real_distribution<double> dist(-scale, scale);
  std::uniform_int_distribution<int> pick(0, dim - 1);
  ConformalFactor u;
  for (int k = 0; k < 3; ++k) {
    Monomial m;
    m.coeff = dist(rng);
    m.expo.assign(dim, 0);
    m.expo[pick(rng)] += 1;
    if (k == 2) m.expo[pick(rng)] += 1;
    u.u.push_back(m);
  }
  return u;
}

// --- criteria ---

Outcome criterion1() {  // flat model, all invariants zero, < 10 s
  Outcome out;
  const auto t0 = std::chrono::steady_clock::now();
  for (int n : {1, 2, 3}) {
    ResidualReport rep = run_suite(cfg_for("flat-group", n, 20, 1e-10));
    out.require(rep.all_pass(), "flat-group n=" + std::to_string(n) +
                                    " max residual " + fmt(rep.max_residual()));
  }
  const double dt = seconds_since(t0);
  out.require(dt < 10.0, "runtime " + fmt(dt) + " s exceeds 10 s");
  out.detail += (out.detail.empty() ? "" : "; ") + std::string("runtime ") +
                fmt(dt) + " s";
  return out;
}

Outcome criterion2() {  // axiom solver soundness and full rank
  Outcome out;
  std::mt19937_64 rng(42);
  double worst = 0.0, min_margin = 1.0;
  auto probe = [&](const StructureSpec& spec, std::vector<double> p) {
    StructureEval ev = evaluate(spec, p, 3);
    Connection conn = solve_connection(ev);
    worst = std::max(worst, connection_axiom_residuals(conn, ev).max_residual());
    min_margin = std::min(min_margin, conn.rank_margin);
  };
  for (int n : {1, 2, 3}) {
    StructureSpec flat = heisenberg_spec(n);
    for (int i = 0; i < 5; ++i) probe(flat, box(rng, flat.dim()));
  }
  for (int n : {1, 2}) {
    StructureSpec hs = hyperboloid_spec(n);
    for (int i = 0; i < 5; ++i) probe(hs, hs_chart(rng, n));
  }
  // five conformal deformations across models and dimensions
  for (int k = 0; k < 5; ++k) {
    const int n = 1 + k % 2;
    StructureSpec base = (k % 2 == 0) ? heisenberg_spec(n) : hyperboloid_spec(n);
    ConformalFactor u = seeded_factor(rng, base.dim());
    StructureSpec bar = deform(base, u);
    for (int i = 0; i < 3; ++i) {
      std::vector<double> p =
          (k % 2 == 0) ? box(rng, base.dim(), 0.6) : hs_chart(rng, n);
      probe(bar, p);
    }
  }
  out.require(worst < 1e-9, "axiom residual " + fmt(worst));
  out.require(min_margin > 1e-8, "rank margin " + fmt(min_margin));
  out.detail = "max residual " + fmt(worst) + ", rank margin " + fmt(min_margin);
  return out;
}

Outcome criterion3() {  // curvature identities
  Outcome out;
  double worst = 0.0;
  for (int n : {1, 2}) {
    ResidualReport rep = run_suite(cfg_for("prop31", n, 10, 1e-7));
    out.require(rep.all_pass(), "prop31 n=" + std::to_string(n) +
                                    " max residual " + fmt(rep.max_residual()));
    worst = std::max(worst, rep.max_residual());
  }
  out.detail = "max residual " + fmt(worst);
  return out;
}

Outcome criterion4() {  // trace-freeness of PW
  Outcome out;
  std::mt19937_64 rng(42);
  double worst_trace = 0.0, worst_pw1 = 0.0;
  auto probe = [&](const StructureSpec& spec, std::vector<double> p) {
    StructureEval ev = evaluate(spec, p, 3);
    Connection conn = solve_connection(ev);
    CurvatureData curv = curvature_tensor(conn, ev);
    InvariantTensors inv = invariant_tensors(curv, conn, ev);
    ResidualReport rep = conformal_curvature_residuals(curv, inv, ev, 1e-9);
    worst_trace = std::max(worst_trace, rep.max_residual("PW_trace"));
    if (ev.n == 1)
      worst_pw1 = std::max(
          worst_pw1, inv.PW.max_abs_value() / std::max(1.0, curv.R.max_abs_value()));
  };
  for (int n : {1, 2}) {
    StructureSpec hs = hyperboloid_spec(n);
    for (int i = 0; i < 5; ++i) probe(hs, hs_chart(rng, n));
    StructureSpec flat = heisenberg_spec(n);
    ConformalFactor u = seeded_factor(rng, flat.dim());
    StructureSpec bar = deform(flat, u);
    for (int i = 0; i < 5; ++i) probe(bar, box(rng, flat.dim(), 0.6));
    Polynomial P{{0.1, std::vector<int>(flat.dim(), 0)}};
    P[0].expo[0] = 3;
    StructureSpec pert = perturbed_hyperboloid_spec(n, P);
    for (int i = 0; i < 3; ++i) probe(pert, hs_chart(rng, n, 0.5));
  }
  out.require(worst_trace < 1e-9, "PW trace residual " + fmt(worst_trace));
  out.require(worst_pw1 < 1e-10, "PW (n=1) magnitude " + fmt(worst_pw1));
  out.detail = "traces " + fmt(worst_trace) + ", PW(n=1) " + fmt(worst_pw1);
  return out;
}

Outcome criterion5() {  // conformal invariance, < 60 s
  Outcome out;
  const auto t0 = std::chrono::steady_clock::now();
  ResidualReport rep = run_suite(cfg_for("conformal-invariance", 2, 10, 1e-7));
  out.require(rep.all_pass(), "n=2 max residual " + fmt(rep.max_residual()));
  ResidualReport rep3 = run_suite(cfg_for("conformal-invariance", 3, 4, 1e-7));
  out.require(rep3.all_pass(), "n=3 max residual " + fmt(rep3.max_residual()));
  const double dt = seconds_since(t0);
  out.require(dt < 60.0, "runtime " + fmt(dt) + " s exceeds 60 s");
  out.detail = "max residual " +
               fmt(std::max(rep.max_residual(), rep3.max_residual())) +
               ", runtime " + fmt(dt) + " s";
  return out;
}

Outcome criterion6() {  // flatness criterion and negative control
  Outcome out;
  double worst = 0.0;
  for (int n : {1, 2, 3}) {
    ResidualReport rep = run_suite(cfg_for("flatness-criterion", n, 6, 1e-7));
    out.require(rep.all_pass(), "flatness n=" + std::to_string(n) +
                                    " max residual " + fmt(rep.max_residual()));
    bool control_seen = false;
    for (const auto& c : rep.cases)
      control_seen |= c.name.rfind("negative-control", 0) == 0;
    out.require(control_seen, "negative control missing at n=" + std::to_string(n));
    worst = std::max(worst, rep.max_residual());
  }
  out.detail = "max residual " + fmt(worst);
  return out;
}

Outcome criterion7() {  // transformation laws against closed forms
  Outcome out;
  std::mt19937_64 rng(42);
  double worst = 0.0;
  for (int n : {1, 2}) {
    StructureSpec flat = heisenberg_spec(n);
    ConformalFactor u = seeded_factor(rng, flat.dim());
    for (int i = 0; i < 3; ++i) {
      ResidualReport rep =
          transformation_law_residuals(flat, u, box(rng, flat.dim(), 0.6), 3, 1e-8);
      out.require(rep.all_pass(), "laws n=" + std::to_string(n) +
                                      " max residual " + fmt(rep.max_residual()));
      worst = std::max(worst, rep.max_residual());
    }
    // frozen closed-form values for u = u_1
    ConformalFactor u1;
    Monomial m;
    m.coeff = 1.0;
    m.expo.assign(flat.dim(), 0);
    m.expo[0] = 1;
    u1.u.push_back(m);
    std::vector<double> p = box(rng, flat.dim(), 0.5);
    const double e2u = std::exp(2.0 * p[0]);
    StructureSpec bar = deform(flat, u1);
    StructureEval evb = evaluate(bar, p, 3);
    Connection connb = solve_connection(evb);
    const double tau_resid =
        std::abs(connb.tau(0, n).value() + 2.0 * e2u) / std::max(1.0, 2.0 * e2u);
    const double expect = -8.0 * n * (n + 1) * e2u;
    const double scal_resid =
        std::abs(curvature_tensor(connb, evb).scal.value() - expect) /
        std::max(1.0, std::abs(expect));
    out.require(tau_resid < 1e-9, "u1 torsion value " + fmt(tau_resid));
    out.require(scal_resid < 1e-9, "u1 scalar value " + fmt(scal_resid));
    worst = std::max({worst, tau_resid, scal_resid});
  }
  out.detail = "max residual " + fmt(worst);
  return out;
}

Outcome criterion8() {  // integrability conditions
  Outcome out;
  ResidualReport rep2 = run_suite(cfg_for("integrability", 2, 6, 1e-7));
  out.require(rep2.all_pass(),
              "n=2 max residual " + fmt(rep2.max_residual()));
  bool has312 = false;
  for (const auto& c : rep2.cases) has312 |= c.name.find("intehxi312") != std::string::npos;
  out.require(has312, "Reeb-Reeb condition missing");

  ResidualReport rep1 = run_suite(cfg_for("integrability", 1, 6, 1e-7));
  out.require(rep1.all_pass(),
              "n=1 max residual " + fmt(rep1.max_residual()));
  bool joint = false;
  for (const auto& c : rep1.cases)
    joint |= c.name.find("F_vs_intexih11_sym") != std::string::npos;
  out.require(joint, "3D equivalence check missing");
  out.detail = "max residual " +
               fmt(std::max(rep1.max_residual(), rep2.max_residual()));
  return out;
}

Outcome criterion9() {  // Cayley transform
  Outcome out;
  double worst = 0.0;
  for (int n : {1, 2}) {
    ResidualReport rep = run_suite(cfg_for("cayley", n, 10, 1e-9));
    out.require(rep.all_pass(), "cayley n=" + std::to_string(n) +
                                    " max residual " + fmt(rep.max_residual()));
    worst = std::max(worst, rep.max_residual());
  }
  out.detail = "max residual " + fmt(worst);
  return out;
}

Outcome criterion10() {  // Yamabe equation and Kelvin transform
  Outcome out;
  std::mt19937_64 rng(42);
  double worst = 0.0;
  for (int n : {1, 2, 3}) {
    for (double eps : {0.5, 1.0, 2.0}) {
      GroupFunction phi = phi_epsilon_fn(n, eps);
      int done = 0;
      while (done < 30) {
        std::vector<double> p = box(rng, 2 * n + 1, 1.0);
        if (phi.singular_margin(p) < 0.1) continue;
        const double r = yamabe_residual(phi, n, p);
        worst = std::max(worst, r);
        ++done;
      }
    }
  }
  out.require(worst < 1e-9, "family residual " + fmt(worst));

  double worst_f = 0.0;
  for (int n : {1, 2, 3}) {
    GroupFunction f = f_standard(n);
    int done = 0;
    while (done < 10) {
      std::vector<double> p = box(rng, 2 * n + 1, 1.0);
      if (f.singular_margin(p) < 0.1) continue;
      const double l = ultrahyperbolic_L(f, p);
      const double v = f.at(p, 0).value();
      const double rhs = -4.0 * n * n * std::pow(v, (n + 2.0) / n);
      worst_f = std::max(worst_f, std::abs(l - rhs) / std::max(1.0, std::abs(rhs)));
      ++done;
    }
  }
  out.require(worst_f < 1e-9, "basic identity residual " + fmt(worst_f));

  double worst_k = 0.0, worst_h = 0.0;
  for (int n : {1, 2}) {
    ResidualReport rep = run_suite(cfg_for("kelvin", n, 10, 1e-8));
    out.require(rep.all_pass(), "kelvin n=" + std::to_string(n) +
                                    " max residual " + fmt(rep.max_residual()));
    worst_h = std::max(worst_h, rep.max_residual("kelvin/harmonic"));
    worst_k = std::max(worst_k, rep.max_residual());
  }
  out.require(worst_h < 1e-9, "harmonic preservation " + fmt(worst_h));
  out.detail = "family " + fmt(worst) + ", identity " + fmt(worst_f) +
               ", kelvin " + fmt(worst_k);
  return out;
}

Outcome criterion11() {  // CR mode
  Outcome out;
  double worst = 0.0;
  for (int n : {1, 2}) {
    ResidualReport rep = run_suite(cfg_for("cr", n, 20, 1e-9));
    out.require(rep.all_pass(), "cr n=" + std::to_string(n) +
                                    " max residual " + fmt(rep.max_residual()));
    worst = std::max(worst, rep.max_residual());
  }
  out.detail = "max residual " + fmt(worst);
  return out;
}

Outcome criterion12() {  // determinism
  Outcome out;
  for (const std::string& suite : {std::string("cayley"), std::string("yamabe")}) {
    RunConfig cfg = cfg_for(suite, 1, 4, 1e-8, 7);
    const std::string a = run_suite(cfg).to_json().dump();
    const std::string b = run_suite(cfg).to_json().dump();
    out.require(a == b, suite + " re-run differs");
    cfg.seed = 8;
    const std::string c = run_suite(cfg).to_json().dump();
    out.require(a != c, suite + " ignores the seed");
  }
  out.detail = "byte-identical re-runs";
  return out;
}

}  // namespace

int main() {
  struct Entry {
    int id;
    const char* label;
    std::function<Outcome()> run;
  };
  const std::vector<Entry> entries{
      {1, "flat model: all invariants vanish on the group", criterion1},
      {2, "axiom solver soundness and uniqueness margin", criterion2},
      {3, "curvature identities (first and second Bianchi)", criterion3},
      {4, "trace-freeness of the auxiliary curvature tensor", criterion4},
      {5, "conformal invariance of the conformal curvature", criterion5},
      {6, "flatness criterion with negative control", criterion6},
      {7, "conformal transformation laws against closed forms", criterion7},
      {8, "integrability conditions on conformally flat structures", criterion8},
      {9, "Cayley transform: pullback, paraholomorphy, inversion", criterion9},
      {10, "Yamabe solutions, dilations and the Kelvin transform", criterion10},
      {11, "CR mode: Webster connection, sphere, F tensor", criterion11},
      {12, "determinism of seeded reports", criterion12},
  };

  int failures = 0;
  for (const Entry& e : entries) {
    Outcome out;
    std::string error;
    try {
      out = e.run();
    } catch (const std::exception& ex) {
      out.pass = false;
      out.detail = std::string("exception: ") + ex.what();
    }
    if (!out.pass) ++failures;
    std::printf("[%s] criterion %2d: %s%s%s\n", out.pass ? "PASS" : "FAIL", e.id,
                e.label, out.detail.empty() ? "" : " -- ", out.detail.c_str());
    std::fflush(stdout);
  }
  if (failures > 0) std::printf("%d criterion(s) failed\n", failures);
  return failures == 0 ? 0 : 1;
}

#include "paracontact/suites.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <functional>
#include <random>

#include "paracontact/conformal.hpp"
#include "paracontact/cr.hpp"
#include "paracontact/curvature.hpp"
#include "paracontact/models.hpp"
#include "paracontact/yamabe.hpp"

namespace paracontact {

void RunConfig::validate() const {
  const auto& names = suite_names();
  if (std::find(names.begin(), names.end(), suite) == names.end())
    throw Error("unknown suite: " + suite);
  if (n < 1 || n > 3) throw Error("n must be 1, 2 or 3");
  if (jet_order < 2) throw Error("jet order must be at least 2");
  if (!(tolerance > 0)) throw Error("tolerance must be positive");
  if (num_points < 1) throw Error("number of points must be positive");
}

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{
      "compat",      "flat-group",           "hyperboloid",
      "prop31",      "conformal-invariance", "flatness-criterion",
      "integrability", "cayley",             "yamabe",
      "kelvin",      "cr"};
  return names;
}

namespace {

struct Sampler {
  std::mt19937_64 rng;
  explicit Sampler(std::uint64_t seed) : rng(seed) {}

  double uniform(double a, double b) {
    return std::uniform_real_distribution<double>(a, b)(rng);
  }

  std::vector<double> box(int dim, double w = 1.0) {
    std::vector<double> p(dim);
    for (double& x : p) x = uniform(-w, w);
    return p;
  }

  /// Point in [-w, w]^dim subject to a margin predicate, resampled up to 100
  /// times.
  std::vector<double> guarded(int dim, double w,
                              const std::function<double(std::span<const double>)>& margin,
                              double floor) {
    for (int tries = 0; tries < 100; ++tries) {
      std::vector<double> p = box(dim, w);
      if (margin(p) > floor) return p;
    }
    throw Error("could not sample a point away from the singular sets");
  }

  std::vector<double> hyperboloid_chart(int n, double w = 0.7) {
    return guarded(2 * n + 1, w,
                   [n](std::span<const double> q) {
                     double rad = 1.0;
                     for (int i = 0; i < 2 * n + 1; ++i)
                       rad += (i % 2 == 0 ? 1.0 : -1.0) * q[i] * q[i];
                     return rad;
                   },
                   0.35);
  }

  std::vector<double> sphere_chart(int n, double w = 0.4) {
    return guarded(2 * n + 1, w,
                   [](std::span<const double> q) {
                     double rad = 1.0;
                     for (double c : q) rad -= c * c;
                     return rad;
                   },
                   0.3);
  }

  /// Random polynomial conformal factor: degree <= 2, coefficients in
  /// [-0.5, 0.5], a few terms.
  ConformalFactor conformal_factor(int dim, double scale = 0.5) {
    ConformalFactor u;
    std::uniform_int_distribution<int> pick(0, dim - 1);
    for (int k = 0; k < 3; ++k) {
      Monomial m;
      m.coeff = uniform(-scale, scale);
      m.expo.assign(dim, 0);
      m.expo[pick(rng)] += 1;
      if (k == 2) m.expo[pick(rng)] += 1;
      u.u.push_back(m);
    }
    return u;
  }

  Polynomial perturbation(int dim, double size) {
    std::uniform_int_distribution<int> pick(0, dim - 1);
    Polynomial p;
    for (int k = 0; k < 4; ++k) {
      Monomial m;
      m.coeff = uniform(-size, size);
      m.expo.assign(dim, 0);
      m.expo[pick(rng)] += 1;
      m.expo[pick(rng)] += 1;
      m.expo[pick(rng)] += 1;
      if (k % 2 == 0) m.expo[pick(rng)] += 1;
      p.push_back(m);
    }
    return p;
  }
};


void run_case(ResidualReport& rep, const std::string& name,
              std::vector<double> point, double tol,
              const std::function<double()>& body) {
  try {
    rep.add(name, std::move(point), body(), tol);
  } catch (const Error& e) {
    rep.add_error(name, std::move(point), e.what(), tol);
  }
}

// max-abs value of a jet tensor normalized by max(1, reference)
double magnitude(const JetTensor& t, double reference = 1.0) {
  return t.max_abs_value() / std::max(1.0, reference);
}

// The configured u expression applies to every structure whose coordinate
// names it mentions; other structures in the same suite get a seeded factor.
// run_suite validates the expression against the models' coordinates upfront.
ConformalFactor config_factor(const RunConfig& cfg, const StructureSpec& spec,
                              Sampler& sampler) {
  if (!cfg.u_expr.empty()) {
    try {
      return ConformalFactor{parse_u_expression(cfg.u_expr, spec.coords)};
    } catch (const Error&) {
    }
  }
  return sampler.conformal_factor(spec.dim());
}

StructureSpec base_spec_for(const RunConfig& cfg) {
  if (!cfg.spec_path.empty()) return load_spec_file(cfg.spec_path);
  return heisenberg_spec(cfg.n);
}

// --- individual suites ---

void suite_compat(const RunConfig& cfg, ResidualReport& rep) {
  Sampler s(cfg.seed);
  const int order = std::max(2, std::min(cfg.jet_order, 3));
  auto sweep = [&](const StructureSpec& spec, const std::string& label,
                   const std::function<std::vector<double>()>& sample) {
    for (int i = 0; i < cfg.num_points; ++i) {
      std::vector<double> p = sample();
      run_case(rep, label + "/compatibility", p, cfg.tolerance, [&] {
        return check_compatibility(evaluate(spec, p, order)).max_residual();
      });
    }
  };
  sweep(base_spec_for(cfg), cfg.spec_path.empty() ? "flat-group" : "user-spec",
        [&] { return s.box(2 * cfg.n + 1); });
  if (cfg.spec_path.empty()) {
    StructureSpec hs = hyperboloid_spec(cfg.n);
    sweep(hs, "hyperboloid", [&] { return s.hyperboloid_chart(cfg.n); });
    StructureSpec crh = cr_heisenberg_spec(cfg.n);
    sweep(crh, "cr-heisenberg", [&] { return s.box(2 * cfg.n + 1); });
    StructureSpec sp = sphere_spec(cfg.n);
    sweep(sp, "sphere", [&] { return s.sphere_chart(cfg.n); });
  }
}

void suite_flat_group(const RunConfig& cfg, ResidualReport& rep) {
  Sampler s(cfg.seed);
  StructureSpec spec = heisenberg_spec(cfg.n);
  const int order = cfg.n == 1 ? 4 : 3;
  for (int i = 0; i < cfg.num_points; ++i) {
    std::vector<double> p = s.box(spec.dim());
    run_case(rep, "flat/zero-invariants", p, cfg.tolerance, [&] {
      StructureEval ev = evaluate(spec, p, order);
      Connection conn = solve_connection(ev);
      CurvatureData curv = curvature_tensor(conn, ev);
      InvariantTensors inv =
          invariant_tensors(curv, conn, ev, cfg.n == 1, cfg.n == 1);
      double m = std::max({magnitude(conn.gamma), magnitude(conn.tau),
                           magnitude(curv.R), std::abs(curv.scal.value()),
                           magnitude(inv.L), magnitude(inv.PW),
                           magnitude(inv.Wpc)});
      if (cfg.n == 1) m = std::max(m, magnitude(inv.F));
      return m;
    });
    run_case(rep, "flat/axioms", p, cfg.tolerance, [&] {
      StructureEval ev = evaluate(spec, p, order);
      Connection conn = solve_connection(ev);
      return connection_axiom_residuals(conn, ev).max_residual();
    });
  }
}

void suite_hyperboloid(const RunConfig& cfg, ResidualReport& rep) {
  Sampler s(cfg.seed);
  StructureSpec spec = hyperboloid_spec(cfg.n);
  double scal_ref = 0.0;
  bool have_ref = false;
  for (int i = 0; i < cfg.num_points; ++i) {
    std::vector<double> p = s.hyperboloid_chart(cfg.n);
    run_case(rep, "hyperboloid/axioms", p, cfg.tolerance, [&] {
      StructureEval ev = evaluate(spec, p, 3);
      Connection conn = solve_connection(ev);
      return connection_axiom_residuals(conn, ev).max_residual();
    });
    run_case(rep, "hyperboloid/para-sasakian", p, cfg.tolerance, [&] {
      StructureEval ev = evaluate(spec, p, 2);
      return magnitude(solve_connection(ev).tau);
    });
    run_case(rep, "hyperboloid/scal-constant", p, cfg.tolerance, [&] {
      StructureEval ev = evaluate(spec, p, 2);
      Connection conn = solve_connection(ev);
      double sc = curvature_tensor(conn, ev).scal.value();
      if (!have_ref) {
        scal_ref = sc;
        have_ref = true;
      }
      return std::abs(sc - scal_ref) / std::max(1.0, std::abs(scal_ref));
    });
    if (cfg.n > 1) {
      run_case(rep, "hyperboloid/conformally-flat", p, cfg.tolerance, [&] {
        StructureEval ev = evaluate(spec, p, 3);
        Connection conn = solve_connection(ev);
        CurvatureData curv = curvature_tensor(conn, ev);
        InvariantTensors inv = invariant_tensors(curv, conn, ev);
        return magnitude(inv.Wpc, curv.R.max_abs_value());
      });
    }
  }
}

void suite_prop31(const RunConfig& cfg, ResidualReport& rep) {
  Sampler s(cfg.seed);
  auto sweep = [&](const StructureSpec& spec, const std::string& label,
                   const std::function<std::vector<double>()>& sample, int pts) {
    for (int i = 0; i < pts; ++i) {
      std::vector<double> p = sample();
      try {
        StructureEval ev = evaluate(spec, p, 4);
        Connection conn = solve_connection(ev);
        CurvatureData curv = curvature_tensor(conn, ev);
        ResidualReport sub = proposition31_residuals(curv, conn, ev, cfg.tolerance);
        for (const auto& c : sub.cases)
          rep.add(label + "/" + c.name, p, c.residual, cfg.tolerance);
        InvariantTensors inv = invariant_tensors(curv, conn, ev);
        ResidualReport sub2 = conformal_curvature_residuals(curv, inv, ev, cfg.tolerance);
        for (const auto& c : sub2.cases)
          rep.add(label + "/" + c.name, p, c.residual, cfg.tolerance);
      } catch (const Error& e) {
        rep.add_error(label + "/identities", p, e.what(), cfg.tolerance);
      }
    }
  };
  const int pts = std::max(1, cfg.num_points / 2);
  StructureSpec hs = hyperboloid_spec(cfg.n);
  sweep(hs, "hyperboloid", [&] { return s.hyperboloid_chart(cfg.n); }, pts);

  StructureSpec flat = heisenberg_spec(cfg.n);
  ConformalFactor u = config_factor(cfg, flat, s);
  StructureSpec bar = deform(flat, u);
  sweep(bar, "deformed-flat", [&] { return s.box(flat.dim(), 0.6); }, pts);

  ConformalFactor uh = s.conformal_factor(hs.dim(), 0.3);
  StructureSpec hbar = deform(hs, uh);
  sweep(hbar, "deformed-hyperboloid", [&] { return s.hyperboloid_chart(cfg.n); }, pts);
}

void suite_conformal_invariance(const RunConfig& cfg, ResidualReport& rep) {
  Sampler s(cfg.seed);
  StructureSpec hs = hyperboloid_spec(cfg.n);

  const int nfactors = cfg.u_expr.empty() ? 5 : 1;
  for (int k = 0; k < nfactors; ++k) {
    ConformalFactor u = config_factor(cfg, hs, s);
    for (int i = 0; i < cfg.num_points; ++i) {
      std::vector<double> p = s.hyperboloid_chart(cfg.n);
      run_case(rep, "invariance/hyperboloid-u" + std::to_string(k), p,
               cfg.tolerance,
               [&] { return wpc_invariance_residual(hs, u, p, 3); });
    }
  }

  // a curved structure with nonvanishing conformal curvature exercises the
  // invariance beyond the 0 = 0 case
  if (cfg.n > 1) {
    Polynomial P = s.perturbation(hs.dim(), 0.1);
    StructureSpec pert = perturbed_hyperboloid_spec(cfg.n, P);
    for (int k = 0; k < std::max(1, nfactors / 2); ++k) {
      ConformalFactor u = config_factor(cfg, pert, s);
      for (int i = 0; i < std::max(1, cfg.num_points / 2); ++i) {
        std::vector<double> p = s.hyperboloid_chart(cfg.n, 0.5);
        run_case(rep, "invariance/curved-u" + std::to_string(k), p,
                 cfg.tolerance,
                 [&] { return wpc_invariance_residual(pert, u, p, 3); });
      }
    }
  }

  // transformation laws, re-solved against closed forms
  StructureSpec flat = heisenberg_spec(cfg.n);
  ConformalFactor uf = config_factor(cfg, flat, s);
  for (int i = 0; i < std::max(1, cfg.num_points / 2); ++i) {
    std::vector<double> p = s.box(flat.dim(), 0.6);
    try {
      ResidualReport sub = transformation_law_residuals(flat, uf, p, 3, cfg.tolerance);
      for (const auto& c : sub.cases)
        rep.add("laws/" + c.name, p, c.residual, cfg.tolerance);
    } catch (const Error& e) {
      rep.add_error("laws/transformation", p, e.what(), cfg.tolerance);
    }
  }

  // frozen closed-form values for u = u_1 on the flat group
  {
    ConformalFactor u1;
    Monomial m;
    m.coeff = 1.0;
    m.expo.assign(flat.dim(), 0);
    m.expo[0] = 1;
    u1.u.push_back(m);
    std::vector<double> p = s.box(flat.dim(), 0.5);
    const double e2u = std::exp(2.0 * p[0]);
    run_case(rep, "laws/u1-torsion-value", p, 1e-9, [&] {
      StructureSpec bar = deform(flat, u1);
      StructureEval evb = evaluate(bar, p, 3);
      Connection connb = solve_connection(evb);
      return std::abs(connb.tau(0, cfg.n).value() + 2.0 * e2u) /
             std::max(1.0, 2.0 * e2u);
    });
    run_case(rep, "laws/u1-scal-value", p, 1e-9, [&] {
      StructureSpec bar = deform(flat, u1);
      StructureEval evb = evaluate(bar, p, 3);
      Connection connb = solve_connection(evb);
      CurvatureData curvb = curvature_tensor(connb, evb);
      const double expect = -8.0 * cfg.n * (cfg.n + 1) * e2u;
      return std::abs(curvb.scal.value() - expect) / std::max(1.0, std::abs(expect));
    });
  }
}

void suite_flatness_criterion(const RunConfig& cfg, ResidualReport& rep) {
  Sampler s(cfg.seed);
  StructureSpec flat = heisenberg_spec(cfg.n);

  const int nfactors = cfg.u_expr.empty() ? 3 : 1;
  const int pts = std::max(1, cfg.num_points / 3);
  for (int k = 0; k < nfactors; ++k) {
    ConformalFactor u = config_factor(cfg, flat, s);
    StructureSpec bar = deform(flat, u);
    for (int i = 0; i < pts; ++i) {
      std::vector<double> p = s.box(flat.dim(), 0.6);
      if (cfg.n > 1) {
        run_case(rep, "deformed-flat/Wpc-vanishes-u" + std::to_string(k), p,
                 cfg.tolerance, [&] {
                   StructureEval ev = evaluate(bar, p, 3);
                   Connection conn = solve_connection(ev);
                   CurvatureData curv = curvature_tensor(conn, ev);
                   InvariantTensors inv = invariant_tensors(curv, conn, ev);
                   return magnitude(inv.Wpc, curv.R.max_abs_value());
                 });
      } else {
        run_case(rep, "deformed-flat/F-vanishes-u" + std::to_string(k), p,
                 cfg.tolerance, [&] {
                   StructureEval ev = evaluate(bar, p, 4);
                   Connection conn = solve_connection(ev);
                   CurvatureData curv = curvature_tensor(conn, ev);
                   InvariantTensors inv = invariant_tensors(curv, conn, ev, true, true);
                   return magnitude(inv.F, std::abs(curv.scal.value()));
                 });
      }
    }
  }

  // negative control: a valid but randomly perturbed embedding is not flat
  {
    Polynomial P = s.perturbation(2 * cfg.n + 1, 0.1);
    StructureSpec pert = perturbed_hyperboloid_spec(cfg.n, P);
    std::vector<double> p = s.hyperboloid_chart(cfg.n, 0.5);
    run_case(rep, "negative-control/nonflat-detected", p, 0.5, [&] {
      StructureEval ev = evaluate(pert, p, cfg.n == 1 ? 4 : 3);
      Connection conn = solve_connection(ev);
      CurvatureData curv = curvature_tensor(conn, ev);
      InvariantTensors inv =
          invariant_tensors(curv, conn, ev, cfg.n == 1, cfg.n == 1);
      const double obstruction =
          cfg.n == 1 ? inv.F.max_abs_value() : inv.Wpc.max_abs_value();
      return obstruction > 1e-3 ? 0.0 : 1.0;
    });
  }
}

void suite_integrability(const RunConfig& cfg, ResidualReport& rep) {
  Sampler s(cfg.seed);
  StructureSpec flat = heisenberg_spec(cfg.n);
  const int nfactors = cfg.u_expr.empty() ? 2 : 1;
  const int pts = std::max(1, cfg.num_points / 3);
  for (int k = 0; k < nfactors; ++k) {
    ConformalFactor u = config_factor(cfg, flat, s);
    StructureSpec bar = deform(flat, u);
    for (int i = 0; i < pts; ++i) {
      std::vector<double> p = s.box(flat.dim(), 0.6);
      try {
        StructureEval ev = evaluate(bar, p, 5);
        Connection conn = solve_connection(ev);
        CurvatureData curv = curvature_tensor(conn, ev);
        InvariantTensors inv =
            invariant_tensors(curv, conn, ev, true, cfg.n == 1);
        ResidualReport sub =
            integrability_residuals(curv, inv, conn, ev, cfg.tolerance);
        for (const auto& c : sub.cases)
          rep.add("deformed-flat/" + c.name, p, c.residual, cfg.tolerance);
      } catch (const Error& e) {
        rep.add_error("deformed-flat/integrability", p, e.what(), cfg.tolerance);
      }
    }
  }
}

void suite_cayley(const RunConfig& cfg, ResidualReport& rep) {
  Sampler s(cfg.seed);
  for (int i = 0; i < cfg.num_points; ++i) {
    std::vector<double> q = s.hyperboloid_chart(cfg.n);
    run_case(rep, "cayley/pullback", q, cfg.tolerance,
             [&] { return cayley_pullback_residual(cfg.n, q); });
    std::vector<double> amb = s.box(2 * cfg.n + 2, 0.8);
    run_case(rep, "cayley/para-cauchy-riemann", amb, cfg.tolerance,
             [&] { return cayley_pcr_residual(cfg.n, amb); });
  }
  // inversion is an involution away from the singular set
  GroupFunction margin = kelvin(constant_fn(cfg.n, 1.0), cfg.n);
  for (int i = 0; i < cfg.num_points; ++i) {
    std::vector<double> p =
        s.guarded(2 * cfg.n + 1, 1.0, margin.singular_margin, 0.1);
    run_case(rep, "inversion/involution", p, 1e-10, [&] {
      std::vector<double> pp = inversion(inversion(p, cfg.n), cfg.n);
      double r = 0.0;
      for (std::size_t c = 0; c < p.size(); ++c)
        r = std::max(r, std::abs(pp[c] - p[c]));
      return r;
    });
  }
  {
    std::vector<double> pole(2 * cfg.n + 2, 0.0);
    pole[0] = 1.0;
    run_case(rep, "cayley/pole-value", pole, 1e-14, [&] {
      CayleyImage img = cayley(pole, cfg.n);
      double r = std::abs(img.pullback_factor - 0.25);
      for (double c : img.group_point) r = std::max(r, std::abs(c));
      return r;
    });
  }
}

void suite_yamabe(const RunConfig& cfg, ResidualReport& rep) {
  Sampler s(cfg.seed);
  const int n = cfg.n;
  const int d = 2 * n + 1;

  {  // exact annihilation cases
    std::vector<double> p = s.box(d, 0.8);
    run_case(rep, "operator/annihilates-kernel", p, 1e-13, [&] {
      double worst = 0.0;
      Polynomial t{{1.0, std::vector<int>(d, 0)}};
      t[0].expo[2 * n] = 1;
      worst = std::max(worst, std::abs(ultrahyperbolic_L(polynomial_fn(n, t), p)));
      for (int k = 0; k < n; ++k) {
        Polynomial uk{{1.0, std::vector<int>(d, 0)}};
        uk[0].expo[k] = 1;
        worst = std::max(worst, std::abs(ultrahyperbolic_L(polynomial_fn(n, uk), p)));
        Polynomial sumk{{1.0, std::vector<int>(d, 0)}, {1.0, std::vector<int>(d, 0)}};
        sumk[0].expo[k] = 2;
        sumk[1].expo[n + k] = 2;
        worst = std::max(worst, std::abs(ultrahyperbolic_L(polynomial_fn(n, sumk), p)));
      }
      return worst;
    });
  }

  {  // basic-solution identity under both vertical sign conventions
    GroupFunction f = f_standard(n);
    for (int i = 0; i < 5; ++i) {
      std::vector<double> p = s.guarded(d, 1.0, f.singular_margin, 0.1);
      run_case(rep, "operator/basic-solution-identity", p, cfg.tolerance, [&] {
        double worst = 0.0;
        for (FrameConvention conv :
             {FrameConvention::plus, FrameConvention::minus}) {
          const double l = ultrahyperbolic_L(f, p, conv);
          const double v = f.at(p, 0).value();
          const double rhs = -4.0 * n * n * std::pow(v, (n + 2.0) / n);
          worst = std::max(worst, std::abs(l - rhs) / std::max(1.0, std::abs(rhs)));
        }
        return worst;
      });
    }
  }

  {  // the solution family
    GroupFunction phi = phi_epsilon_fn(n, cfg.eps);
    for (int i = 0; i < cfg.num_points; ++i) {
      std::vector<double> p = s.guarded(d, 1.0, phi.singular_margin, 0.1);
      run_case(rep, "family/yamabe-residual", p, cfg.tolerance,
               [&] { return yamabe_residual(phi, n, p); });
    }
  }

  {  // translation invariance
    std::vector<double> g0(d);
    for (int i = 0; i < d; ++i) g0[i] = 0.1 + 0.1 * i;
    GroupFunction phi = translate(phi_epsilon_fn(n, 1.0), n, g0);
    for (int i = 0; i < std::max(1, cfg.num_points / 2); ++i) {
      std::vector<double> p = s.guarded(d, 1.0, phi.singular_margin, 0.1);
      run_case(rep, "family/translated-residual", p, cfg.tolerance,
               [&] { return yamabe_residual(phi, n, p); });
    }
  }

  {  // dilation: member-to-member map of the family
    GroupFunction lhs = dilate(phi_epsilon_fn(n, 1.0), n, 1.0 / cfg.eps);
    GroupFunction rhs = phi_epsilon_fn(n, cfg.eps);
    for (int i = 0; i < std::max(1, cfg.num_points / 2); ++i) {
      std::vector<double> p = s.guarded(d, 1.0, lhs.singular_margin, 0.1);
      if (rhs.singular_margin(p) < 0.05) continue;
      run_case(rep, "family/dilation-identity", p, 1e-10, [&] {
        return std::abs(lhs.at(p, 0).value() - rhs.at(p, 0).value()) /
               std::max(1.0, std::abs(rhs.at(p, 0).value()));
      });
    }
  }
}

void suite_kelvin(const RunConfig& cfg, ResidualReport& rep) {
  Sampler s(cfg.seed);
  const int n = cfg.n;
  const int d = 2 * n + 1;

  // harmonic seeds: 1, t, u_1, u_1^2 + v_1^2
  std::vector<std::pair<std::string, GroupFunction>> seeds;
  seeds.emplace_back("one", constant_fn(n, 1.0));
  {
    Polynomial t{{1.0, std::vector<int>(d, 0)}};
    t[0].expo[2 * n] = 1;
    seeds.emplace_back("t", polynomial_fn(n, t));
    Polynomial u1{{1.0, std::vector<int>(d, 0)}};
    u1[0].expo[0] = 1;
    seeds.emplace_back("u1", polynomial_fn(n, u1));
    Polynomial q{{1.0, std::vector<int>(d, 0)}, {1.0, std::vector<int>(d, 0)}};
    q[0].expo[0] = 2;
    q[1].expo[n] = 2;
    seeds.emplace_back("u1sq+v1sq", polynomial_fn(n, q));
  }
  for (auto& [label, seed] : seeds) {
    GroupFunction k = kelvin(seed, n);
    for (int i = 0; i < std::max(1, cfg.num_points / 2); ++i) {
      std::vector<double> p = s.guarded(d, 1.0, k.singular_margin, 0.1);
      run_case(rep, "kelvin/harmonic-" + label, p, cfg.tolerance,
               [&] { return std::abs(ultrahyperbolic_L(k, p)); });
    }
  }

  {  // K phi_eps solves the equation; K phi_1 = phi_1
    GroupFunction kphi = kelvin(phi_epsilon_fn(n, cfg.eps), n);
    for (int i = 0; i < cfg.num_points; ++i) {
      std::vector<double> p = s.guarded(d, 1.0, kphi.singular_margin, 0.1);
      run_case(rep, "kelvin/family-residual", p, cfg.tolerance,
               [&] { return yamabe_residual(kphi, n, p); });
    }
    GroupFunction k1 = kelvin(phi_epsilon_fn(n, 1.0), n);
    for (int i = 0; i < std::max(1, cfg.num_points / 2); ++i) {
      std::vector<double> p = s.guarded(d, 1.0, k1.singular_margin, 0.1);
      run_case(rep, "kelvin/fixed-point-of-unit-eps", p, 1e-9, [&] {
        const double a = k1.at(p, 0).value();
        const double b = phi_epsilon(n, 1.0, p);
        return std::abs(a - b) / std::max(1.0, std::abs(b));
      });
    }
  }

  {  // K o K = identity on values
    GroupFunction phi = phi_epsilon_fn(n, 1.0);
    GroupFunction kk = kelvin(kelvin(phi, n), n);
    for (int i = 0; i < std::max(1, cfg.num_points / 2); ++i) {
      std::vector<double> p = s.guarded(d, 1.0, kk.singular_margin, 0.1);
      run_case(rep, "kelvin/involution", p, 1e-9, [&] {
        const double a = kk.at(p, 0).value();
        const double b = phi.at(p, 0).value();
        return std::abs(a - b) / std::max(1.0, std::abs(b));
      });
    }
  }
}

void suite_cr(const RunConfig& cfg, ResidualReport& rep) {
  Sampler s(cfg.seed);

  StructureSpec flat = cr_heisenberg_spec(cfg.n);
  for (int i = 0; i < std::max(1, cfg.num_points / 2); ++i) {
    std::vector<double> p = s.box(flat.dim(), 0.8);
    run_case(rep, "cr-heisenberg/axioms", p, cfg.tolerance, [&] {
      StructureEval ev = evaluate(flat, p, 3);
      Connection conn = webster_connection(ev);
      double r = connection_axiom_residuals(conn, ev).max_residual();
      return std::max({r, magnitude(conn.gamma), magnitude(conn.tau)});
    });
  }
  if (cfg.n == 1) {
    std::vector<double> p = s.box(3, 0.8);
    run_case(rep, "cr-heisenberg/f-tensor", p, cfg.tolerance, [&] {
      StructureEval ev = evaluate(flat, p, 4);
      Connection conn = webster_connection(ev);
      CurvatureData curv = curvature_tensor(conn, ev);
      return f_car_tensor(curv, conn, ev).max_abs_value();
    });
  }

  StructureSpec sphere = sphere_spec(cfg.n);
  double scal_ref = 0.0;
  bool have_ref = false;
  for (int i = 0; i < std::max(1, cfg.num_points / 2); ++i) {
    std::vector<double> p = s.sphere_chart(cfg.n);
    run_case(rep, "sphere/axioms-and-torsion", p, cfg.tolerance, [&] {
      StructureEval ev = evaluate(sphere, p, 3);
      Connection conn = webster_connection(ev);
      double r = connection_axiom_residuals(conn, ev).max_residual();
      return std::max(r, magnitude(conn.tau));
    });
    run_case(rep, "sphere/scal-constant-positive", p, cfg.tolerance, [&] {
      StructureEval ev = evaluate(sphere, p, 2);
      Connection conn = webster_connection(ev);
      const double sc = curvature_tensor(conn, ev).scal.value();
      if (sc <= 0.0) return 1.0;
      if (!have_ref) {
        scal_ref = sc;
        have_ref = true;
      }
      return std::abs(sc - scal_ref) / std::max(1.0, std::abs(scal_ref));
    });
  }
  if (cfg.n == 1) {
    std::vector<double> p = s.sphere_chart(1);
    run_case(rep, "sphere/f-tensor", p, cfg.tolerance, [&] {
      StructureEval ev = evaluate(sphere, p, 4);
      Connection conn = webster_connection(ev);
      CurvatureData curv = curvature_tensor(conn, ev);
      return f_car_tensor(curv, conn, ev).max_abs_value();
    });
    StructureSpec sas = sasakian3_spec();
    std::vector<double> ps = s.box(3, 0.5);
    run_case(rep, "sasakian/comparison-chain", ps, cfg.tolerance, [&] {
      SasakianComparison cmp = sasakian_comparison(sas, ps, 4);
      return std::max({cmp.relation_residual, std::abs(cmp.reeb_derivative),
                       cmp.torsion_max, cmp.fcar_vs_hessian});
    });
  }
}

}  // namespace

Polynomial parse_u_expression(const std::string& expr,
                              const std::vector<std::string>& coords) {
  Polynomial poly;
  std::size_t i = 0;
  auto skip_ws = [&] {
    while (i < expr.size() && std::isspace(static_cast<unsigned char>(expr[i]))) ++i;
  };
  skip_ws();
  double sign = 1.0;
  if (i < expr.size() && (expr[i] == '+' || expr[i] == '-')) {
    sign = expr[i] == '-' ? -1.0 : 1.0;
    ++i;
  }
  while (i < expr.size()) {
    // one term: product of decimal factors and coordinate names
    Monomial m;
    m.coeff = sign;
    m.expo.assign(coords.size(), 0);
    bool expect_factor = true;
    while (true) {
      skip_ws();
      if (i >= expr.size()) break;
      const char c = expr[i];
      if (c == '*') {
        ++i;
        expect_factor = true;
        continue;
      }
      if (c == '+' || c == '-') break;
      if (!expect_factor)
        throw Error("u expression: missing '*' between factors");
      if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
        std::size_t used = 0;
        m.coeff *= std::stod(expr.substr(i), &used);
        i += used;
      } else if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
        std::size_t j = i;
        while (j < expr.size() &&
               (std::isalnum(static_cast<unsigned char>(expr[j])) || expr[j] == '_'))
          ++j;
        const std::string name = expr.substr(i, j - i);
        auto it = std::find(coords.begin(), coords.end(), name);
        if (it == coords.end())
          throw Error("u expression: unknown coordinate '" + name + "'");
        m.expo[static_cast<std::size_t>(it - coords.begin())] += 1;
        i = j;
      } else {
        throw Error(std::string("u expression: unexpected character '") + c + "'");
      }
      expect_factor = false;
    }
    poly.push_back(std::move(m));
    skip_ws();
    if (i >= expr.size()) break;
    if (expr[i] == '+' || expr[i] == '-') {
      sign = expr[i] == '-' ? -1.0 : 1.0;
      ++i;
      skip_ws();
      if (i >= expr.size()) throw Error("u expression: dangling sign");
    }
  }
  return poly;
}

ResidualReport run_suite(const RunConfig& config) {
  config.validate();
  if (!config.u_expr.empty()) {
    // the expression must parse against at least one built-in coordinate set
    bool ok = false;
    for (const StructureSpec& spec :
         {heisenberg_spec(config.n), hyperboloid_spec(config.n)}) {
      try {
        parse_u_expression(config.u_expr, spec.coords);
        ok = true;
      } catch (const Error&) {
      }
    }
    if (!ok)
      parse_u_expression(config.u_expr, heisenberg_spec(config.n).coords);
  }
  ResidualReport rep;
  rep.suite = config.suite;
  if (config.suite == "compat")
    suite_compat(config, rep);
  else if (config.suite == "flat-group")
    suite_flat_group(config, rep);
  else if (config.suite == "hyperboloid")
    suite_hyperboloid(config, rep);
  else if (config.suite == "prop31")
    suite_prop31(config, rep);
  else if (config.suite == "conformal-invariance")
    suite_conformal_invariance(config, rep);
  else if (config.suite == "flatness-criterion")
    suite_flatness_criterion(config, rep);
  else if (config.suite == "integrability")
    suite_integrability(config, rep);
  else if (config.suite == "cayley")
    suite_cayley(config, rep);
  else if (config.suite == "yamabe")
    suite_yamabe(config, rep);
  else if (config.suite == "kelvin")
    suite_kelvin(config, rep);
  else if (config.suite == "cr")
    suite_cr(config, rep);
  rep.sort();
  return rep;
}

}  // namespace paracontact

#include "paracontact/structure.hpp"

#include <cmath>
#include <fstream>

#include "paracontact/jet_linalg.hpp"

namespace paracontact {

Jet RationalFn::at(std::span<const double> point, int order) const {
  Jet numjet = polynomial_jet(num, point, order);
  if (den.empty()) return numjet;
  Jet denjet = polynomial_jet(den, point, order);
  if (denjet.value() == 0.0)
    throw ChartDomain("rational coefficient function: denominator vanishes");
  return numjet / denjet;
}

FieldSample PolynomialProvider::sample(std::span<const double> point, int order) const {
  FieldSample out;
  out.frame.resize(frame_.size());
  for (std::size_t a = 0; a < frame_.size(); ++a) {
    out.frame[a].reserve(frame_[a].size());
    for (const RationalFn& fn : frame_[a]) out.frame[a].push_back(fn.at(point, order));
  }
  out.eta.reserve(eta_.size());
  for (const RationalFn& fn : eta_) out.eta.push_back(fn.at(point, order));
  return out;
}

Jet StructureEval::apply_field(int A, const Jet& f) const {
  const int tgt = f.order() - 1;
  Jet r = Jet::constant(dim(), tgt, 0.0);
  for (int i = 0; i < dim(); ++i) {
    Jet coeff = truncated(fields.frame[A][i], tgt);
    if (coeff.max_abs_coeff() == 0.0) continue;
    r += coeff * derivative(f, i);
  }
  return r;
}

Jet StructureEval::eta_on_field(int A) const {
  Jet r = Jet::constant(dim(), order, 0.0);
  for (int i = 0; i < dim(); ++i) r += fields.eta[i] * fields.frame[A][i];
  return r;
}

Jet StructureEval::deta(int A, int B) const {
  // d(eta)(X,Y) = sum_{i,j} (d_i eta_j) (X^i Y^j - X^j Y^i)
  const int tgt = order - 1;
  Jet r = Jet::constant(dim(), tgt, 0.0);
  for (int j = 0; j < dim(); ++j) {
    Jet dj = Jet::constant(dim(), tgt, 0.0);
    bool any = false;
    for (int i = 0; i < dim(); ++i) {
      Jet detaij = derivative(fields.eta[j], i);
      if (detaij.max_abs_coeff() == 0.0) continue;
      Jet cross = truncated(fields.frame[A][i], tgt) * truncated(fields.frame[B][j], tgt) -
                  truncated(fields.frame[A][j], tgt) * truncated(fields.frame[B][i], tgt);
      dj += detaij * cross;
      any = true;
    }
    if (any) r += dj;
  }
  return r;
}

StructureEval evaluate(const StructureSpec& spec, std::span<const double> point,
                       int order) {
  if (order < 1) throw OrderExhausted("structure evaluation needs order >= 1");
  StructureEval ev;
  ev.n = spec.n;
  ev.mode = spec.mode;
  ev.point.assign(point.begin(), point.end());
  ev.order = order;
  ev.fields = spec.fields->sample(point, order);

  const int d = ev.dim();
  if (static_cast<int>(ev.fields.frame.size()) != d ||
      static_cast<int>(ev.fields.eta.size()) != d)
    throw ArityError("field provider returned wrong dimensions");

  // Structure functions: express brackets back in the frame.
  const int bord = order - 1;
  JetMatrix F(d, JetVector(d));
  for (int i = 0; i < d; ++i)
    for (int C = 0; C < d; ++C) F[i][C] = truncated(ev.fields.frame[C][i], bord);

  std::vector<JetVector> brackets;
  std::vector<std::pair<int, int>> pairs;
  for (int A = 0; A < d; ++A) {
    for (int B = A + 1; B < d; ++B) {
      JetVector br(d, Jet::constant(d, bord, 0.0));
      for (int i = 0; i < d; ++i) {
        for (int j = 0; j < d; ++j) {
          Jet dBi = derivative(ev.fields.frame[B][i], j);
          if (dBi.max_abs_coeff() != 0.0)
            br[i] += truncated(ev.fields.frame[A][j], bord) * dBi;
          Jet dAi = derivative(ev.fields.frame[A][i], j);
          if (dAi.max_abs_coeff() != 0.0)
            br[i] -= truncated(ev.fields.frame[B][j], bord) * dAi;
        }
      }
      brackets.push_back(std::move(br));
      pairs.emplace_back(A, B);
    }
  }

  std::vector<JetVector> sols;
  try {
    sols = jet_linear_solve_multi(F, brackets);
  } catch (const SingularSystem&) {
    throw FrameDegenerate("frame matrix is singular at the evaluation point");
  }

  ev.cfun = JetTensor::zeros({d, d, d}, d, bord);
  for (std::size_t k = 0; k < pairs.size(); ++k) {
    auto [A, B] = pairs[k];
    for (int C = 0; C < d; ++C) {
      ev.cfun(A, B, C) = sols[k][C];
      ev.cfun(B, A, C) = -sols[k][C];
    }
  }
  return ev;
}

namespace {

// I extended by zero on the Reeb direction, applied to frame components.
std::vector<Jet> apply_I(const StructureEval& ev, const std::vector<Jet>& v) {
  std::vector<Jet> out(ev.dim(), Jet::constant(v[0].nvars(), v[0].order(), 0.0));
  for (int c = 0; c < ev.hdim(); ++c) {
    Jet t = v[c];
    t *= ev.isg(c);
    out[ev.ih(c)] += t;
  }
  return out;
}

}  // namespace

ResidualReport check_compatibility(const StructureEval& ev, double tol) {
  ResidualReport rep;
  rep.suite = "compatibility";
  const int hd = ev.hdim();
  const double s = ev.s();

  {  // I^2 = s id and g(IX,IY) = -s g(X,Y); structural in an adapted frame.
    ResidualAccum acc;
    for (int a = 0; a < hd; ++a) {
      acc.take(ev.isg(a) * ev.isg(ev.ih(a)) - s);
      acc.term(1.0);
      for (int b = 0; b < hd; ++b) {
        double gIab = ev.isg(a) * ev.isg(b) * ev.g(ev.ih(a), ev.ih(b));
        acc.take(gIab + s * ev.g(a, b));
        acc.term(gIab);
      }
    }
    rep.add("I_squared_and_metric", ev.point, acc.norm(), tol);
  }

  {  // eta on the frame: eta(e_a) = 0, eta(Reeb) = sigma.
    ResidualAccum acc;
    for (int a = 0; a < hd; ++a) acc.take(ev.eta_on_field(a).value());
    acc.take(ev.eta_on_field(ev.reeb()).value() - ev.sigma());
    rep.add("eta_frame", ev.point, acc.norm(), tol);
  }

  {  // d(eta)(e_a, e_b) = 2 omega(e_a, e_b).
    ResidualAccum acc;
    for (int a = 0; a < hd; ++a) {
      for (int b = a + 1; b < hd; ++b) {
        double de = ev.deta(a, b).value();
        acc.take(de - 2.0 * ev.omega(a, b));
        acc.term(de);
      }
    }
    rep.add("deta_vs_omega", ev.point, acc.norm(), tol);
  }

  {  // d(eta)(Reeb, .) = 0.
    ResidualAccum acc;
    for (int a = 0; a < hd; ++a) acc.take(ev.deta(ev.reeb(), a).value());
    rep.add("deta_reeb", ev.point, acc.norm(), tol);
  }

  {  // Nijenhuis tensor and horizontality of [IX,Y] + [X,IY].
    ResidualAccum nij, hor;
    const int d = ev.dim();
    const int bord = ev.order - 1;
    for (int a = 0; a < hd; ++a) {
      for (int b = a + 1; b < hd; ++b) {
        std::vector<Jet> iab(d), ab(d), ia_b(d), a_ib(d);
        for (int C = 0; C < d; ++C) {
          iab[C] = ev.cfun(ev.ih(a), ev.ih(b), C);
          iab[C] *= ev.isg(a) * ev.isg(b);
          ab[C] = ev.cfun(a, b, C);
          ia_b[C] = ev.cfun(ev.ih(a), b, C);
          ia_b[C] *= ev.isg(a);
          a_ib[C] = ev.cfun(a, ev.ih(b), C);
          a_ib[C] *= ev.isg(b);
        }
        std::vector<Jet> sum_mixed(d, Jet::constant(d, bord, 0.0));
        for (int C = 0; C < d; ++C) sum_mixed[C] = ia_b[C] + a_ib[C];
        hor.take(sum_mixed[ev.reeb()].value());
        for (int C = 0; C < d; ++C) hor.term(sum_mixed[C].value());

        std::vector<Jet> i_mixed = apply_I(ev, sum_mixed);
        for (int C = 0; C < d; ++C) {
          double nc = iab[C].value() + s * ab[C].value() - i_mixed[C].value();
          nij.take(nc);
          nij.term(iab[C].value());
          nij.term(ab[C].value());
        }
      }
    }
    rep.add("nijenhuis", ev.point, nij.norm(), tol);
    rep.add("mixed_bracket_horizontal", ev.point, hor.norm(), tol);
  }

  return rep;
}

Jet signed_trace(const JetTensor& T, const StructureEval& ev) {
  if (T.rank() != 2 || T.dims()[0] < ev.hdim() || T.dims()[1] < ev.hdim())
    throw ArityError("signed_trace expects a bilinear form on the horizontal frame");
  const Jet& probe = T(0, 0);
  Jet r = Jet::constant(probe.nvars(), probe.order(), 0.0);
  for (int a = 0; a < ev.hdim(); ++a) {
    Jet t = T(a, a);
    t *= ev.eps(a);
    r += t;
  }
  return r;
}

Jet signed_pair_trace(const JetTensor& T, const StructureEval& ev) {
  if (T.rank() != 2 || T.dims()[0] < ev.hdim() || T.dims()[1] < ev.hdim())
    throw ArityError("signed_pair_trace expects a bilinear form on the horizontal frame");
  const Jet& probe = T(0, 0);
  Jet r = Jet::constant(probe.nvars(), probe.order(), 0.0);
  for (int a = 0; a < ev.hdim(); ++a) {
    Jet t = T(a, ev.ih(a));
    t *= ev.eps(a) * ev.isg(a);
    r += t;
  }
  return r;
}

// --- serialization ---

namespace {

Polynomial polynomial_from_json(const nlohmann::json& j) {
  Polynomial p;
  for (const auto& m : j) {
    Monomial mono;
    mono.coeff = m.at(0).get<double>();
    mono.expo = m.at(1).get<std::vector<int>>();
    p.push_back(std::move(mono));
  }
  return p;
}

nlohmann::json polynomial_to_json(const Polynomial& p) {
  nlohmann::json j = nlohmann::json::array();
  for (const Monomial& m : p) j.push_back({m.coeff, m.expo});
  return j;
}

RationalFn rational_from_json(const nlohmann::json& j) {
  RationalFn fn;
  if (j.is_object()) {
    fn.num = polynomial_from_json(j.at("num"));
    fn.den = polynomial_from_json(j.at("den"));
  } else {
    fn.num = polynomial_from_json(j);
  }
  return fn;
}

nlohmann::json rational_to_json(const RationalFn& fn) {
  if (fn.den.empty()) return polynomial_to_json(fn.num);
  return {{"num", polynomial_to_json(fn.num)}, {"den", polynomial_to_json(fn.den)}};
}

}  // namespace

StructureSpec spec_from_json(const nlohmann::json& j) {
  StructureSpec spec;
  spec.name = j.value("name", "unnamed");
  spec.n = j.at("n").get<int>();
  const std::string mode = j.at("mode").get<std::string>();
  if (mode == "paracontact")
    spec.mode = Mode::paracontact;
  else if (mode == "cr")
    spec.mode = Mode::cr;
  else
    throw Error("unknown mode: " + mode);
  spec.coords = j.at("coordinates").get<std::vector<std::string>>();
  if (static_cast<int>(spec.coords.size()) != spec.dim())
    throw Error("coordinate list has wrong length");

  std::vector<std::vector<RationalFn>> frame;
  for (const auto& field : j.at("frame")) {
    std::vector<RationalFn> comps;
    for (const auto& comp : field) comps.push_back(rational_from_json(comp));
    frame.push_back(std::move(comps));
  }
  std::vector<RationalFn> eta;
  for (const auto& comp : j.at("eta")) eta.push_back(rational_from_json(comp));
  if (static_cast<int>(frame.size()) != spec.dim())
    throw Error("frame list has wrong length");

  if (j.contains("signs")) {
    const auto signs = j.at("signs").get<std::vector<double>>();
    StructureEval probe;
    probe.n = spec.n;
    probe.mode = spec.mode;
    for (int a = 0; a < spec.dim(); ++a) {
      if (static_cast<int>(signs.size()) != spec.dim() || signs[a] != probe.eps(a))
        throw Error("metric signs do not match the adapted-frame convention");
    }
  }

  spec.fields = std::make_shared<PolynomialProvider>(std::move(frame), std::move(eta));
  return spec;
}

nlohmann::json spec_to_json(const StructureSpec& spec) {
  const auto* poly = dynamic_cast<const PolynomialProvider*>(spec.fields.get());
  if (poly == nullptr)
    throw Error("only specs with polynomial coefficient functions are serializable");
  nlohmann::json j;
  j["name"] = spec.name;
  j["n"] = spec.n;
  j["mode"] = spec.mode == Mode::paracontact ? "paracontact" : "cr";
  j["coordinates"] = spec.coords;
  j["frame"] = nlohmann::json::array();
  for (const auto& field : poly->frame_fns()) {
    nlohmann::json comps = nlohmann::json::array();
    for (const auto& fn : field) comps.push_back(rational_to_json(fn));
    j["frame"].push_back(comps);
  }
  j["eta"] = nlohmann::json::array();
  for (const auto& fn : poly->eta_fns()) j["eta"].push_back(rational_to_json(fn));
  StructureEval probe;
  probe.n = spec.n;
  probe.mode = spec.mode;
  std::vector<double> signs;
  for (int a = 0; a < spec.dim(); ++a) signs.push_back(probe.eps(a));
  j["signs"] = signs;
  return j;
}

StructureSpec load_spec_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open spec file: " + path);
  nlohmann::json j;
  in >> j;
  return spec_from_json(j);
}

}  // namespace paracontact

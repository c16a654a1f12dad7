#include "paracontact/curvature.hpp"

#include <cmath>

namespace paracontact {

CurvatureData curvature_tensor(const Connection& conn, const StructureEval& ev) {
  const int dim = ev.dim();
  const int hd = ev.hdim();
  const int gord = conn.gamma.flat_data()[0].order();
  if (gord < 1) throw OrderExhausted("curvature needs connection jets of order >= 1");
  const int rord = gord - 1;

  CurvatureData out;
  out.R = JetTensor::zeros({dim, dim, dim, dim}, dim, rord);

  // R^E_{ABC} = E_A(G^E_{BC}) - E_B(G^E_{AC})
  //           + G^D_{BC} G^E_{AD} - G^D_{AC} G^E_{BD} - c^F_{AB} G^E_{FC}
  for (int A = 0; A < dim; ++A) {
    for (int B = A + 1; B < dim; ++B) {
      for (int C = 0; C < dim; ++C) {
        for (int E = 0; E < dim; ++E) {
          Jet val = ev.apply_field(A, conn.gamma(B, C, E)) -
                    ev.apply_field(B, conn.gamma(A, C, E));
          for (int D = 0; D < dim; ++D) {
            const Jet& bc = conn.gamma(B, C, D);
            const Jet& ad = conn.gamma(A, D, E);
            if (bc.max_abs_coeff() != 0.0 && ad.max_abs_coeff() != 0.0)
              val += truncated(bc, rord) * truncated(ad, rord);
            const Jet& ac = conn.gamma(A, C, D);
            const Jet& bd = conn.gamma(B, D, E);
            if (ac.max_abs_coeff() != 0.0 && bd.max_abs_coeff() != 0.0)
              val -= truncated(ac, rord) * truncated(bd, rord);
            const Jet& cab = ev.cfun(A, B, D);
            const Jet& fc = conn.gamma(D, C, E);
            if (cab.max_abs_coeff() != 0.0 && fc.max_abs_coeff() != 0.0)
              val -= truncated(cab, rord) * truncated(fc, rord);
          }
          val *= ev.eps(E);  // lower the last slot
          out.R(A, B, C, E) = val;
          out.R(B, A, C, E) = -val;
        }
      }
    }
    for (int C = 0; C < dim; ++C)
      for (int E = 0; E < dim; ++E) out.R(A, A, C, E) = Jet::constant(dim, rord, 0.0);
  }

  out.ricci = JetTensor::zeros({dim, dim}, dim, rord);
  for (int A = 0; A < dim; ++A)
    for (int B = 0; B < dim; ++B) {
      Jet r = Jet::constant(dim, rord, 0.0);
      for (int a = 0; a < hd; ++a) r += out.R(a, A, B, a) * ev.eps(a);
      out.ricci(A, B) = r;
    }

  out.rho = JetTensor::zeros({dim, dim}, dim, rord);
  for (int A = 0; A < dim; ++A)
    for (int B = 0; B < dim; ++B) {
      Jet r = Jet::constant(dim, rord, 0.0);
      for (int a = 0; a < hd; ++a)
        r += out.R(A, B, a, ev.ih(a)) * (0.5 * ev.eps(a) * ev.isg(a));
      out.rho(A, B) = r;
    }

  out.scal = Jet::constant(dim, rord, 0.0);
  for (int a = 0; a < hd; ++a) out.scal += out.ricci(a, a) * ev.eps(a);
  return out;
}

namespace {

// L(X, I e_b)-type index helpers keep the signed pairing in one place.
struct Idx {
  const StructureEval& ev;
  double eps(int a) const { return ev.eps(a); }
  int ih(int a) const { return ev.ih(a); }
  double sg(int a) const { return ev.isg(a); }
};

}  // namespace

InvariantTensors invariant_tensors(const CurvatureData& curv, const Connection& conn,
                                   const StructureEval& ev, bool want_B,
                                   bool want_F) {
  if (ev.mode != Mode::paracontact)
    throw ModeError("conformal invariant tensors are defined in paracontact mode");
  const int dim = ev.dim();
  const int hd = ev.hdim();
  const int n = ev.n;
  const int rord = curv.scal.order();
  Idx ix{ev};

  InvariantTensors inv;
  inv.L = JetTensor::zeros({hd, hd}, dim, rord);
  const double cl1 = 1.0 / (2.0 * (n + 2));
  const double cl2 = 1.0 / (8.0 * (n + 1) * (n + 2));
  for (int b = 0; b < hd; ++b)
    for (int c = 0; c < hd; ++c) {
      Jet val = curv.rho(b, ix.ih(c)) * (cl1 * ix.sg(c));
      val -= truncated(conn.tau(ix.ih(b), c), rord) * ix.sg(b);
      if (b == c) val -= curv.scal * (cl2 * ev.g(b, c));
      inv.L(b, c) = val;
    }
  inv.trL = signed_trace(inv.L, ev);

  inv.PW = JetTensor::zeros({hd, hd, hd, hd}, dim, rord);
  auto L = [&](int a, int b) -> const Jet& { return inv.L(a, b); };
  auto LI = [&](int a, int b) { return inv.L(a, ix.ih(b)) * ix.sg(b); };   // L(x, I y)
  auto LIl = [&](int a, int b) { return inv.L(ix.ih(a), b) * ix.sg(a); };  // L(I x, y)
  for (int a = 0; a < hd; ++a)
    for (int b = 0; b < hd; ++b)
      for (int c = 0; c < hd; ++c)
        for (int d = 0; d < hd; ++d) {
          Jet val = curv.R(a, b, c, d);
          if (ev.g(a, c) != 0.0) val += L(b, d) * ev.g(a, c);
          if (ev.g(b, d) != 0.0) val += L(a, c) * ev.g(b, d);
          if (ev.g(b, c) != 0.0) val -= L(a, d) * ev.g(b, c);
          if (ev.g(a, d) != 0.0) val -= L(b, c) * ev.g(a, d);
          if (ev.omega(a, c) != 0.0) val += LI(b, d) * ev.omega(a, c);
          if (ev.omega(b, d) != 0.0) val += LI(a, c) * ev.omega(b, d);
          if (ev.omega(b, c) != 0.0) val -= LI(a, d) * ev.omega(b, c);
          if (ev.omega(a, d) != 0.0) val -= LI(b, c) * ev.omega(a, d);
          if (ev.omega(a, b) != 0.0) val += (LI(c, d) - LIl(c, d)) * ev.omega(a, b);
          if (ev.omega(c, d) != 0.0) val += (LI(a, b) - LIl(a, b)) * ev.omega(c, d);
          inv.PW(a, b, c, d) = val;
        }

  inv.Wpc = JetTensor::zeros({hd, hd, hd, hd}, dim, rord);
  for (int a = 0; a < hd; ++a)
    for (int b = 0; b < hd; ++b)
      for (int c = 0; c < hd; ++c)
        for (int d = 0; d < hd; ++d)
          inv.Wpc(a, b, c, d) =
              (inv.PW(a, b, c, d) -
               inv.PW(ix.ih(a), ix.ih(b), c, d) * (ix.sg(a) * ix.sg(b))) *
              0.5;

  if (want_B) {
    JetTensor dL = covariant_derivative(inv.L, conn, ev);
    const int bord = dL.flat_data()[0].order();
    inv.B_xi = JetTensor::zeros({hd}, dim, bord);
    for (int x = 0; x < hd; ++x) {
      Jet val = Jet::constant(dim, bord, 0.0);
      for (int a = 0; a < hd; ++a)
        val += dL(a, ix.ih(a), x) * (ix.eps(a) * ix.sg(a));
      inv.B_xi(x) = val * (-1.0 / (2 * n + 1));
    }
    JetTensor dB = covariant_derivative(inv.B_xi, conn, ev);
    const int b2 = dB.flat_data()[0].order();
    Jet tr = Jet::constant(dim, b2, 0.0);
    for (int a = 0; a < hd; ++a) tr += dB(a, ix.ih(a)) * (ix.eps(a) * ix.sg(a));
    Jet lil = Jet::constant(dim, rord, 0.0);
    for (int a = 0; a < hd; ++a)
      for (int b = 0; b < hd; ++b)
        lil += inv.L(ix.ih(a), b) * inv.L(a, ix.ih(b)) *
               (ix.eps(a) * ix.eps(b) * ix.sg(a) * ix.sg(b));
    inv.B_xixi = (tr + truncated(lil, b2)) * (-1.0 / (2 * n));
    inv.has_B = true;
  }

  if (want_F) {
    if (n != 1) throw ModeError("the F tensor is defined only in dimension 3");
    JetTensor dtau = covariant_derivative(conn.tau, conn, ev);
    JetTensor ddtau = covariant_derivative(dtau, conn, ev);  // (A,B; a,b)
    JetTensor dscal = frame_differential(curv.scal, ev);
    JetTensor hscal = covariant_derivative(dscal, conn, ev);  // (A; B)
    const int ford = std::min(ddtau.flat_data()[0].order(),
                              hscal.flat_data()[0].order());
    inv.F = JetTensor::zeros({hd, hd}, dim, ford);
    Jet hpair = Jet::constant(dim, ford, 0.0);  // (nabla dScal)(e_a, I e_a)
    for (int a = 0; a < hd; ++a)
      hpair += truncated(hscal(a, ix.ih(a)), ford) * (ix.eps(a) * ix.sg(a));
    for (int x = 0; x < hd; ++x)
      for (int y = 0; y < hd; ++y) {
        Jet val = truncated(hscal(x, ix.ih(y)), ford) * ix.sg(y) +
                  truncated(hscal(y, ix.ih(x)), ford) * ix.sg(x);
        for (int a = 0; a < hd; ++a) {
          val += truncated(ddtau(x, a, y, a), ford) * (16.0 * ix.eps(a));
          val += truncated(ddtau(y, a, x, a), ford) * (16.0 * ix.eps(a));
          val -= truncated(ddtau(a, ix.ih(a), x, ix.ih(y)), ford) *
                 (48.0 * ix.eps(a) * ix.sg(a) * ix.sg(y));
        }
        val += truncated(curv.scal * truncated(conn.tau(x, y), rord), ford) * 36.0;
        if (x == y) val += hpair * (3.0 * ev.g(x, y));
        inv.F(x, y) = val;
      }
    inv.has_F = true;
  }

  return inv;
}

ResidualReport proposition31_residuals(const CurvatureData& curv,
                                       const Connection& conn,
                                       const StructureEval& ev, double tol) {
  ResidualReport rep;
  rep.suite = "curvature_identities";
  const int hd = ev.hdim();
  const int R = ev.reeb();
  Idx ix{ev};
  auto tau = [&](int a, int b) { return conn.tau(a, b).value(); };
  auto Rv = [&](int a, int b, int c, int d) { return curv.R(a, b, c, d).value(); };

  {  // R(X,Y,IZ,IV) = -R(X,Y,Z,V); R antisymmetric in the last slots; R(...,Reeb)=0.
    ResidualAccum acc;
    for (int a = 0; a < hd; ++a)
      for (int b = 0; b < hd; ++b)
        for (int c = 0; c < hd; ++c)
          for (int d = 0; d < hd; ++d) {
            const double r = Rv(a, b, c, d);
            acc.term(r);
            acc.take(ix.sg(c) * ix.sg(d) * Rv(a, b, ix.ih(c), ix.ih(d)) + r);
            acc.take(Rv(a, b, d, c) + r);
          }
    for (int a = 0; a < hd; ++a)
      for (int b = 0; b < hd; ++b)
        for (int c = 0; c < hd; ++c) acc.take(Rv(a, b, c, R));
    rep.add("curvature_symmetries", ev.point, acc.norm(), tol);
  }

  {  // R(X,Y,Z,V) + R(IX,IY,Z,V) = 2[g tau + omega tau combination]
    ResidualAccum acc;
    for (int a = 0; a < hd; ++a)
      for (int b = 0; b < hd; ++b)
        for (int c = 0; c < hd; ++c)
          for (int d = 0; d < hd; ++d) {
            const double lhs =
                Rv(a, b, c, d) + ix.sg(a) * ix.sg(b) * Rv(ix.ih(a), ix.ih(b), c, d);
            auto tI = [&](int p, int q) { return ix.sg(q) * tau(p, ix.ih(q)); };
            const double rhs =
                2.0 * (ev.g(a, c) * tI(b, d) + ev.g(b, d) * tI(a, c) -
                       ev.g(b, c) * tI(a, d) - ev.g(a, d) * tI(b, c)) +
                2.0 * (ev.omega(a, c) * tau(b, d) + ev.omega(b, d) * tau(a, c) -
                       ev.omega(b, c) * tau(a, d) - ev.omega(a, d) * tau(b, c));
            acc.take(lhs - rhs);
            acc.term(lhs);
            acc.term(rhs);
          }
    rep.add("curvature_I_pair", ev.point, acc.norm(), tol);
  }

  JetTensor dtau = covariant_derivative(conn.tau, conn, ev);
  {  // R(Reeb,X,Y,Z) = (nabla_Y tau)(Z,X) - (nabla_Z tau)(Y,X)
    ResidualAccum acc;
    for (int x = 0; x < hd; ++x)
      for (int y = 0; y < hd; ++y)
        for (int z = 0; z < hd; ++z) {
          const double lhs = Rv(R, x, y, z);
          const double rhs = dtau(y, z, x).value() - dtau(z, y, x).value();
          acc.take(lhs - rhs);
          acc.term(lhs);
          acc.term(rhs);
        }
    rep.add("reeb_curvature_vs_dtau", ev.point, acc.norm(), tol);
  }

  {  // Ricci symmetry and r(X,Y) + r(IX,IY) = 4(1-n) tau(X,IY)
    ResidualAccum acc;
    for (int x = 0; x < hd; ++x)
      for (int y = 0; y < hd; ++y) {
        const double r = curv.ricci(x, y).value();
        acc.term(r);
        acc.take(r - curv.ricci(y, x).value());
        const double lhs =
            r + ix.sg(x) * ix.sg(y) * curv.ricci(ix.ih(x), ix.ih(y)).value();
        const double rhs = 4.0 * (1 - ev.n) * ix.sg(y) * tau(x, ix.ih(y));
        acc.take(lhs - rhs);
        acc.term(rhs);
      }
    rep.add("ricci_symmetry_and_torsion_trace", ev.point, acc.norm(), tol);
  }

  {  // 2 rho(X,IY) = r(X,Y) - r(IX,IY) = R(e_a, I e_a, X, I Y)
    ResidualAccum acc;
    for (int x = 0; x < hd; ++x)
      for (int y = 0; y < hd; ++y) {
        const double lhs = 2.0 * ix.sg(y) * curv.rho(x, ix.ih(y)).value();
        const double rhs = curv.ricci(x, y).value() -
                           ix.sg(x) * ix.sg(y) * curv.ricci(ix.ih(x), ix.ih(y)).value();
        double third = 0.0;
        for (int a = 0; a < hd; ++a)
          third += ix.eps(a) * ix.sg(a) * ix.sg(y) * Rv(a, ix.ih(a), x, ix.ih(y));
        acc.take(lhs - rhs);
        acc.take(lhs - third);
        acc.term(lhs);
        acc.term(rhs);
        acc.term(third);
      }
    rep.add("ricci_two_form", ev.point, acc.norm(), tol);
  }

  {  // pair exchange: R(X,Y,Z,V) - R(Z,V,X,Y) = 2[omega tau combination]
    ResidualAccum acc;
    for (int a = 0; a < hd; ++a)
      for (int b = 0; b < hd; ++b)
        for (int c = 0; c < hd; ++c)
          for (int d = 0; d < hd; ++d) {
            const double lhs = Rv(a, b, c, d) - Rv(c, d, a, b);
            const double rhs =
                2.0 * (ev.omega(a, c) * tau(b, d) + ev.omega(b, d) * tau(a, c) -
                       ev.omega(b, c) * tau(a, d) - ev.omega(a, d) * tau(b, c));
            acc.take(lhs - rhs);
            acc.term(rhs);
            acc.term(Rv(a, b, c, d));
          }
    rep.add("pair_exchange", ev.point, acc.norm(), tol);
  }

  {  // R(Reeb,X,Y,Z) - R(Y,Z,Reeb,X) = (nabla_Y tau)(Z,X) - (nabla_Z tau)(Y,X)
    ResidualAccum acc;
    for (int x = 0; x < hd; ++x)
      for (int y = 0; y < hd; ++y)
        for (int z = 0; z < hd; ++z) {
          const double lhs = Rv(R, x, y, z) - Rv(y, z, R, x);
          const double rhs = dtau(y, z, x).value() - dtau(z, y, x).value();
          acc.take(lhs - rhs);
          acc.term(lhs);
          acc.term(rhs);
        }
    rep.add("reeb_pair_exchange", ev.point, acc.norm(), tol);
  }

  if (curv.scal.order() >= 1) {
    JetTensor dric = covariant_derivative(curv.ricci, conn, ev);
    JetTensor dscal = frame_differential(curv.scal, ev);
    {  // 2 (nabla_{e_a} r)(e_a, X) = dScal(X)
      ResidualAccum acc;
      for (int x = 0; x < hd; ++x) {
        double div = 0.0;
        for (int a = 0; a < hd; ++a) div += ix.eps(a) * dric(a, a, x).value();
        acc.take(2.0 * div - dscal(x).value());
        acc.term(2.0 * div);
        acc.term(dscal(x).value());
      }
      rep.add("ricci_divergence", ev.point, acc.norm(), tol);
    }

    {  // contracted second Bianchi identity
      JetTensor dR = covariant_derivative(curv.R, conn, ev);
      ResidualAccum acc;
      for (int x = 0; x < hd; ++x)
        for (int y = 0; y < hd; ++y)
          for (int z = 0; z < hd; ++z) {
            double divR = 0.0;
            for (int a = 0; a < hd; ++a) divR += ix.eps(a) * dR(a, x, y, z, a).value();
            const double val = divR - dric(x, y, z).value() + dric(y, x, z).value() +
                               2.0 * ix.sg(x) * Rv(R, y, z, ix.ih(x)) -
                               2.0 * ix.sg(y) * Rv(R, x, z, ix.ih(y)) +
                               2.0 * ev.omega(x, y) * curv.ricci(R, z).value();
            acc.take(val);
            acc.term(divR);
            acc.term(dric(x, y, z).value());
          }
      rep.add("second_bianchi_contracted", ev.point, acc.norm(), tol);
    }
  }

  return rep;
}

ResidualReport conformal_curvature_residuals(const CurvatureData& curv,
                                             const InvariantTensors& inv,
                                             const StructureEval& ev, double tol) {
  ResidualReport rep;
  rep.suite = "conformal_curvature";
  const int hd = ev.hdim();
  const int n = ev.n;
  Idx ix{ev};
  const double pwscale = std::max(1.0, inv.PW.max_abs_value());

  {  // Ricci-type trace of PW
    ResidualAccum acc;
    acc.term(pwscale);
    for (int x = 0; x < hd; ++x)
      for (int y = 0; y < hd; ++y) {
        double tr = 0.0;
        for (int a = 0; a < hd; ++a) tr += ix.eps(a) * inv.PW(a, x, y, a).value();
        acc.take(tr);
      }
    rep.add("PW_trace_ricci", ev.point, acc.norm(), tol);
  }

  {  // rho-type trace of PW
    ResidualAccum acc;
    acc.term(pwscale);
    for (int x = 0; x < hd; ++x)
      for (int y = 0; y < hd; ++y) {
        double tr = 0.0;
        for (int a = 0; a < hd; ++a)
          tr += 0.5 * ix.eps(a) * ix.sg(a) * inv.PW(x, y, a, ix.ih(a)).value();
        acc.take(tr);
      }
    rep.add("PW_trace_rho", ev.point, acc.norm(), tol);
  }

  if (n > 1) {  // PW(X,Y,Z,V) + PW(IX,IY,Z,V) = 0
    ResidualAccum acc;
    acc.term(pwscale);
    for (int a = 0; a < hd; ++a)
      for (int b = 0; b < hd; ++b)
        for (int c = 0; c < hd; ++c)
          for (int d = 0; d < hd; ++d)
            acc.take(inv.PW(a, b, c, d).value() +
                     ix.sg(a) * ix.sg(b) * inv.PW(ix.ih(a), ix.ih(b), c, d).value());
    rep.add("PW_I_pair_antisymmetry", ev.point, acc.norm(), tol);
  } else {  // n == 1: PW vanishes identically
    ResidualAccum acc;
    acc.take(inv.PW.max_abs_value());
    rep.add("PW_vanishes_dim3", ev.point, acc.norm(), tol);
  }

  {  // redundant closed form of 2 Wpc in terms of R, rho, Scal, omega, g
    ResidualAccum acc;
    const double cs = curv.scal.value() / (2.0 * (n + 1) * (n + 2));
    const double c2 = 2.0 / (n + 2);
    const double c1 = 1.0 / (n + 2);
    auto rhoI = [&](int p, int q) {  // rho(p, I q)
      return ix.sg(q) * curv.rho(p, ix.ih(q)).value();
    };
    for (int a = 0; a < hd; ++a)
      for (int b = 0; b < hd; ++b)
        for (int c = 0; c < hd; ++c)
          for (int d = 0; d < hd; ++d) {
            double rhs = curv.R(a, b, c, d).value() -
                         ix.sg(a) * ix.sg(b) * curv.R(ix.ih(a), ix.ih(b), c, d).value();
            rhs += cs * (ev.omega(a, c) * ev.omega(b, d) -
                         ev.omega(b, c) * ev.omega(a, d) +
                         2.0 * ev.omega(a, b) * ev.omega(c, d));
            rhs -= cs * (ev.g(a, c) * ev.g(b, d) - ev.g(b, c) * ev.g(a, d));
            rhs += c2 * (ev.omega(a, b) * curv.rho(c, d).value() +
                         ev.omega(c, d) * curv.rho(a, b).value());
            rhs += c1 * (ev.g(a, c) * rhoI(b, d) - ev.g(b, c) * rhoI(a, d) +
                         ev.g(b, d) * rhoI(a, c) - ev.g(a, d) * rhoI(b, c));
            rhs += c1 * (ev.omega(a, c) * curv.rho(b, d).value() -
                         ev.omega(b, c) * curv.rho(a, d).value() +
                         ev.omega(b, d) * curv.rho(a, c).value() -
                         ev.omega(a, d) * curv.rho(b, c).value());
            acc.take(2.0 * inv.Wpc(a, b, c, d).value() - rhs);
            acc.term(rhs);
          }
    rep.add("Wpc_closed_form", ev.point, acc.norm(), tol);
  }

  return rep;
}

ResidualReport integrability_residuals(const CurvatureData& curv,
                                       const InvariantTensors& inv,
                                       const Connection& conn,
                                       const StructureEval& ev, double tol) {
  if (!inv.has_B)
    throw ArityError("integrability residuals need the B quantities (want_B)");
  ResidualReport rep;
  rep.suite = "integrability";
  const int hd = ev.hdim();
  const int R = ev.reeb();
  const int n = ev.n;
  Idx ix{ev};

  JetTensor dL = covariant_derivative(inv.L, conn, ev);
  JetTensor dB = covariant_derivative(inv.B_xi, conn, ev);
  JetTensor dtrL = frame_differential(inv.trL, ev);
  auto Lv = [&](int a, int b) { return inv.L(a, b).value(); };
  auto Bv = [&](int a) { return inv.B_xi(a).value(); };
  auto tau = [&](int a, int b) { return conn.tau(a, b).value(); };
  const double bxx = inv.B_xixi.value();

  // L(Z, I L(X)) with the signed endomorphism convention.
  auto LIL = [&](int z, int x) {
    double v = 0.0;
    for (int a = 0; a < hd; ++a)
      v += ix.eps(a) * ix.sg(a) * Lv(x, a) * Lv(z, ix.ih(a));
    return v;
  };

  {  // gradient condition on L
    ResidualAccum acc;
    for (int z = 0; z < hd; ++z)
      for (int x = 0; x < hd; ++x)
        for (int y = 0; y < hd; ++y) {
          const double lhs = dL(z, x, y).value() - dL(x, z, y).value();
          const double rhs = ev.omega(z, y) * Bv(x) - ev.omega(x, y) * Bv(z) +
                             2.0 * ev.omega(z, x) * Bv(y);
          acc.take(lhs - rhs);
          acc.term(dL(z, x, y).value());
          acc.term(rhs);
        }
    rep.add("inte", ev.point, acc.norm(), tol);
  }

  {  // consistency of the two trace routes to B
    ResidualAccum acc;
    for (int x = 0; x < hd; ++x) {
      double divL = 0.0;
      for (int a = 0; a < hd; ++a) divL += ix.eps(a) * dL(a, a, x).value();
      const double lhs = dtrL(x).value() - divL;
      const double rhs = 3.0 * ix.sg(x) * Bv(ix.ih(x));
      acc.take(lhs - rhs);
      acc.term(lhs);
      acc.term(rhs);
    }
    rep.add("bes_consistency", ev.point, acc.norm(), tol);
  }

  {  // gradient condition on B
    ResidualAccum acc;
    for (int z = 0; z < hd; ++z)
      for (int x = 0; x < hd; ++x) {
        const double lhs =
            dB(z, x).value() - dB(x, z).value() + LIL(z, x) - LIL(x, z);
        const double rhs = 2.0 * bxx * ev.omega(z, x);
        acc.take(lhs - rhs);
        acc.term(dB(z, x).value());
        acc.term(rhs);
      }
    rep.add("inte1", ev.point, acc.norm(), tol);
  }

  double sym_defect = 0.0;
  {  // mixed Reeb-horizontal condition
    ResidualAccum acc, sym;
    for (int x = 0; x < hd; ++x)
      for (int y = 0; y < hd; ++y) {
        double tauLy = 0.0, tauLx = 0.0;
        for (int a = 0; a < hd; ++a) {
          tauLy += ix.eps(a) * Lv(y, a) * tau(x, a);
          tauLx += ix.eps(a) * Lv(x, a) * tau(y, a);
        }
        const double lhs = dB(x, y).value() - dL(R, x, y).value();
        const double rhs = LIL(y, x) + tauLy + tauLx + bxx * ev.omega(x, y);
        acc.take(lhs - rhs);
        acc.term(lhs);
        acc.term(rhs);
        // symmetric part: defect(x,y) + defect(y,x)
        double tauLy2 = 0.0, tauLx2 = 0.0;
        for (int a = 0; a < hd; ++a) {
          tauLy2 += ix.eps(a) * Lv(x, a) * tau(y, a);
          tauLx2 += ix.eps(a) * Lv(y, a) * tau(x, a);
        }
        const double lhs2 = dB(y, x).value() - dL(R, y, x).value();
        const double rhs2 = LIL(x, y) + tauLy2 + tauLx2 + bxx * ev.omega(y, x);
        sym.take(0.5 * ((lhs - rhs) + (lhs2 - rhs2)));
        sym.term(lhs);
        sym.term(rhs);
      }
    rep.add("intexih11", ev.point, acc.norm(), tol);
    sym_defect = sym.norm();
    rep.add("intexih11_sym", ev.point, sym_defect, tol);
  }

  if (ev.order >= 5) {  // Reeb-Reeb condition; needs one more derivative of B
    JetTensor dBxx = frame_differential(inv.B_xixi, ev);
    ResidualAccum acc;
    for (int x = 0; x < hd; ++x) {
      double mix = 0.0;
      for (int a = 0; a < hd; ++a) {
        mix += -2.0 * ix.eps(a) * Bv(a) * ix.sg(a) * Lv(x, ix.ih(a));
        mix += ix.eps(a) * tau(x, a) * Bv(a);
      }
      const double val = dB(R, x).value() - dBxx(x).value() + mix;
      acc.take(val);
      acc.term(dB(R, x).value());
      acc.term(dBxx(x).value());
      acc.term(mix);
    }
    rep.add("intehxi312", ev.point, acc.norm(), tol);
  }

  {  // curvature consequences of vanishing conformal curvature
    ResidualAccum a0, a1, a2;
    const double trl = inv.trL.value();
    for (int x = 0; x < hd; ++x)
      for (int y = 0; y < hd; ++y) {
        const double lixy = ix.sg(x) * ix.sg(y) * Lv(ix.ih(x), ix.ih(y));
        const double r0 = curv.ricci(x, y).value() -
                          ((2 * n + 1) * Lv(x, y) - 3.0 * lixy + trl * ev.g(x, y));
        a0.take(r0);
        a0.term(curv.ricci(x, y).value());
        const double r1 =
            curv.rho(x, y).value() - ((n + 2) * ix.sg(y) * Lv(x, ix.ih(y)) -
                                      (n + 2) * ix.sg(x) * Lv(ix.ih(x), y) -
                                      trl * ev.omega(x, y));
        a1.take(r1);
        a1.term(curv.rho(x, y).value());
        const double r2 = 2.0 * ix.sg(x) * tau(ix.ih(x), y) + Lv(x, y) + lixy;
        a2.take(r2);
        a2.term(Lv(x, y));
      }
    rep.add("rl0", ev.point, a0.norm(), tol);
    rep.add("rl1", ev.point, a1.norm(), tol);
    rep.add("tl", ev.point, a2.norm(), tol);
  }

  if (n == 1) {
    {  // L = (Scal/16) g - tau(., I.)
      ResidualAccum acc;
      for (int x = 0; x < hd; ++x)
        for (int y = 0; y < hd; ++y) {
          const double rhs = curv.scal.value() / 16.0 * ev.g(x, y) -
                             ix.sg(y) * tau(x, ix.ih(y));
          acc.take(Lv(x, y) - rhs);
          acc.term(Lv(x, y));
          acc.term(rhs);
        }
      rep.add("three_l", ev.point, acc.norm(), tol);
    }
    {  // 2 (nabla_Reeb L) = -(nabla^2_{e_a, I e_a} L) - Scal tau
      JetTensor ddL = covariant_derivative(dL, conn, ev);
      ResidualAccum acc;
      for (int x = 0; x < hd; ++x)
        for (int y = 0; y < hd; ++y) {
          double pair = 0.0;
          for (int a = 0; a < hd; ++a)
            pair += ix.eps(a) * ix.sg(a) * ddL(a, ix.ih(a), x, y).value();
          const double val = 2.0 * dL(R, x, y).value() + pair +
                             curv.scal.value() * tau(x, y);
          acc.take(val);
          acc.term(2.0 * dL(R, x, y).value());
          acc.term(pair);
        }
      rep.add("three_xi", ev.point, acc.norm(), tol);
    }
    if (inv.has_F) {
      ResidualAccum acc;
      acc.take(inv.F.max_abs_value());
      acc.term(std::max(1.0, std::abs(curv.scal.value())));
      rep.add("F_max", ev.point, acc.norm(), tol);
      // Joint vanishing: F and the symmetric defect of the mixed condition
      // characterize the same flatness obstruction in dimension 3.
      rep.add("F_vs_intexih11_sym", ev.point,
              std::abs((sym_defect <= tol) != (acc.norm() <= tol) ? 1.0 : 0.0), 0.5);
    }
  }

  return rep;
}

}  // namespace paracontact

#include "paracontact/cr.hpp"

#include <cmath>

namespace paracontact {

Connection webster_connection(const StructureEval& ev, double consistency_tol) {
  if (ev.mode != Mode::cr)
    throw ModeError("webster_connection expects a CR-mode structure");
  return solve_connection(ev, consistency_tol);
}

JetTensor f_car_tensor(const CurvatureData& curv, const Connection& conn,
                       const StructureEval& ev) {
  if (ev.mode != Mode::cr)
    throw ModeError("f_car_tensor expects a CR-mode structure");
  if (ev.n != 1) throw ModeError("the F tensor is defined only in dimension 3");
  const int dim = ev.dim();
  const int hd = ev.hdim();
  const int rord = curv.scal.order();

  JetTensor dA = covariant_derivative(conn.tau, conn, ev);
  JetTensor ddA = covariant_derivative(dA, conn, ev);
  JetTensor dscal = frame_differential(curv.scal, ev);
  JetTensor hscal = covariant_derivative(dscal, conn, ev);
  const int ford =
      std::min(ddA.flat_data()[0].order(), hscal.flat_data()[0].order());

  JetTensor F = JetTensor::zeros({hd, hd}, dim, ford);
  Jet hpair = Jet::constant(dim, ford, 0.0);
  for (int a = 0; a < hd; ++a)
    hpair += truncated(hscal(a, ev.ih(a)), ford) * (ev.eps(a) * ev.isg(a));
  for (int x = 0; x < hd; ++x)
    for (int y = 0; y < hd; ++y) {
      Jet val = truncated(hscal(x, ev.ih(y)), ford) * ev.isg(y) +
                truncated(hscal(y, ev.ih(x)), ford) * ev.isg(x);
      for (int a = 0; a < hd; ++a) {
        val += truncated(ddA(x, a, y, a), ford) * (16.0 * ev.eps(a));
        val += truncated(ddA(y, a, x, a), ford) * (16.0 * ev.eps(a));
        val += truncated(ddA(a, ev.ih(a), x, ev.ih(y)), ford) *
               (48.0 * ev.eps(a) * ev.isg(a) * ev.isg(y));
      }
      val += truncated(curv.scal * truncated(conn.tau(x, y), rord), ford) * 36.0;
      if (x == y) val += hpair * (3.0 * ev.g(x, y));
      F(x, y) = val;
    }
  return F;
}

SasakianComparison sasakian_comparison(const StructureSpec& spec,
                                       std::span<const double> point, int order) {
  if (spec.mode != Mode::cr)
    throw ModeError("sasakian_comparison expects a CR-mode structure");
  StructureEval ev = evaluate(spec, point, order);
  Connection conn = webster_connection(ev);
  CurvatureData curv = curvature_tensor(conn, ev);

  SasakianComparison out;
  out.scal_cr = curv.scal.value();
  out.torsion_max = conn.tau.max_abs_value();
  out.reeb_derivative = frame_differential(curv.scal, ev)(ev.reeb()).value();

  // Riemannian side: Levi-Civita connection of the extended metric, full-trace
  // scalar curvature, and its Hessian.
  Connection lc = levi_civita_connection(ev);
  CurvatureData rcurv = curvature_tensor(lc, ev);
  const int dim = ev.dim();
  const int rord = rcurv.scal.order();
  Jet scal_g = Jet::constant(dim, rord, 0.0);
  for (int A = 0; A < dim; ++A) {
    for (int C = 0; C < dim; ++C)
      scal_g += rcurv.R(C, A, A, C) * (ev.eps(A) * ev.eps(C));
  }
  out.scal_g = scal_g.value();
  // Real-trace Webster scalar: the hermitian-trace normalization found in the
  // literature is half of it, so the Sasakian comparison reads
  // Scal_cr = Scal_g + 2n in this convention.
  out.relation_residual = std::abs(out.scal_cr - out.scal_g - 2.0 * ev.n) /
                          std::max(1.0, std::abs(out.scal_g));

  if (ev.n == 1) {
    JetTensor F = f_car_tensor(curv, conn, ev);
    JetTensor dsg = frame_differential(scal_g, ev);
    JetTensor hsg = covariant_derivative(dsg, lc, ev);
    ResidualAccum acc;
    const int hd = ev.hdim();
    for (int x = 0; x < hd; ++x)
      for (int y = 0; y < hd; ++y) {
        // with the real-trace scalar, dScal_cr = dScal_g, so F reduces to
        // the symmetrized J-Hessian of Scal_g with unit weight
        const double hess_term =
            ev.isg(y) * hsg(x, ev.ih(y)).value() +
            ev.isg(x) * hsg(y, ev.ih(x)).value();
        acc.take(F(x, y).value() - hess_term);
        acc.term(F(x, y).value());
        acc.term(hess_term);
      }
    out.fcar_vs_hessian = acc.norm();
  }
  return out;
}

}  // namespace paracontact

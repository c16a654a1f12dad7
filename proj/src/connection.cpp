#include "paracontact/connection.hpp"

#include <cmath>
#include <map>
#include <mutex>

#include "paracontact/jet_linalg.hpp"

namespace paracontact {

namespace {

// The axiom system has constant coefficients in an adapted frame; it depends
// only on (n, mode).  Rows index equations, columns index the unknowns
// Gamma^c_{A b} with A over the full frame and b, c horizontal.
struct AxiomSystem {
  std::vector<double> matrix;  // row-major
  int rows = 0;
  int cols = 0;
  // For each row, the right-hand side as a linear combination of structure
  // functions: list of (A, B, C, weight) meaning weight * cfun(A, B, C).
  std::vector<std::vector<std::array<int, 3>>> rhs_idx;
  std::vector<std::vector<double>> rhs_w;

  std::shared_ptr<ConstantLeastSquares> ls;
};

struct FrameGeom {
  int n, hd, dim, reeb;
  double s;
  int ih(int a) const { return a < n ? a + n : a - n; }
  double isg(int a) const { return a < n ? 1.0 : s; }
};

AxiomSystem build_axiom_system(int n, Mode mode) {
  FrameGeom fg{n, 2 * n, 2 * n + 1, 2 * n, mode_s(mode)};
  const int hd = fg.hd, dim = fg.dim, R = fg.reeb;
  const double s = fg.s;
  auto eps = [&](int a) { return a < n ? 1.0 : -s; };

  AxiomSystem sys;
  sys.cols = dim * hd * hd;
  auto xidx = [&](int A, int b, int c) { return (A * hd + b) * hd + c; };

  std::vector<std::vector<double>> rows;
  auto new_row = [&]() -> std::vector<double>& {
    rows.emplace_back(sys.cols, 0.0);
    sys.rhs_idx.emplace_back();
    sys.rhs_w.emplace_back();
    return rows.back();
  };
  auto rhs_term = [&](int A, int B, int C, double w) {
    sys.rhs_idx.back().push_back({A, B, C});
    sys.rhs_w.back().push_back(w);
  };

  // metric parallelism: eps_c Gamma^c_{Ab} + eps_b Gamma^b_{Ac} = 0.
  for (int A = 0; A < dim; ++A) {
    for (int b = 0; b < hd; ++b) {
      for (int c = b; c < hd; ++c) {
        auto& row = new_row();
        row[xidx(A, b, c)] += eps(c);
        row[xidx(A, c, b)] += eps(b);
      }
    }
  }

  // I parallelism: isg(b) Gamma^d_{A, ih(b)} - isg(ih(d)) Gamma^{ih(d)}_{A, b} = 0.
  for (int A = 0; A < dim; ++A) {
    for (int b = 0; b < hd; ++b) {
      for (int d = 0; d < hd; ++d) {
        auto& row = new_row();
        row[xidx(A, fg.ih(b), d)] += fg.isg(b);
        row[xidx(A, b, fg.ih(d))] -= fg.isg(fg.ih(d));
      }
    }
  }

  // horizontal torsion is vertical: Gamma^c_{ab} - Gamma^c_{ba} = c^c_{ab}.
  for (int a = 0; a < hd; ++a) {
    for (int b = a + 1; b < hd; ++b) {
      for (int c = 0; c < hd; ++c) {
        auto& row = new_row();
        row[xidx(a, b, c)] += 1.0;
        row[xidx(b, a, c)] -= 1.0;
        rhs_term(a, b, c, 1.0);
      }
    }
  }

  // torsion endomorphism tau(b,c) = eps_c (Gamma^c_{Rb} - c^c_{Rb}) symmetric
  for (int b = 0; b < hd; ++b) {
    for (int c = b + 1; c < hd; ++c) {
      auto& row = new_row();
      row[xidx(R, b, c)] += eps(c);
      row[xidx(R, c, b)] -= eps(b);
      rhs_term(R, b, c, eps(c));
      rhs_term(R, c, b, -eps(b));
    }
  }

  // tau(I e_b, I e_c) = s tau(e_b, e_c)
  for (int b = 0; b < hd; ++b) {
    for (int c = b; c < hd; ++c) {
      auto& row = new_row();
      const double w = fg.isg(b) * fg.isg(c) * eps(fg.ih(c));
      row[xidx(R, fg.ih(b), fg.ih(c))] += w;
      rhs_term(R, fg.ih(b), fg.ih(c), w);
      row[xidx(R, b, c)] -= s * eps(c);
      rhs_term(R, b, c, -s * eps(c));
    }
  }

  sys.rows = static_cast<int>(rows.size());
  sys.matrix.reserve(static_cast<std::size_t>(sys.rows) * sys.cols);
  for (const auto& row : rows)
    sys.matrix.insert(sys.matrix.end(), row.begin(), row.end());
  try {
    sys.ls = std::make_shared<ConstantLeastSquares>(sys.matrix, sys.rows, sys.cols);
  } catch (const SingularSystem& e) {
    throw NonUniqueConnection(
        "canonical-connection axiom system lost column rank: " + std::string(e.what()));
  }
  return sys;
}

const AxiomSystem& axiom_system(int n, Mode mode) {
  static std::mutex mtx;
  static std::map<std::pair<int, int>, AxiomSystem> cache;
  std::lock_guard<std::mutex> lock(mtx);
  auto key = std::make_pair(n, static_cast<int>(mode));
  auto it = cache.find(key);
  if (it == cache.end()) it = cache.emplace(key, build_axiom_system(n, mode)).first;
  return it->second;
}

}  // namespace

Connection solve_connection(const StructureEval& ev, double consistency_tol) {
  const AxiomSystem& sys = axiom_system(ev.n, ev.mode);
  const int hd = ev.hdim(), dim = ev.dim(), R = ev.reeb();
  const int bord = ev.order - 1;

  JetVector rhs(sys.rows, Jet::constant(dim, bord, 0.0));
  double rhs_scale = 1.0;
  for (int r = 0; r < sys.rows; ++r) {
    for (std::size_t k = 0; k < sys.rhs_idx[r].size(); ++k) {
      const auto& t = sys.rhs_idx[r][k];
      Jet term = ev.cfun(t[0], t[1], t[2]);
      term *= sys.rhs_w[r][k];
      rhs[r] += term;
    }
    rhs_scale = std::max(rhs_scale, rhs[r].max_abs_coeff());
  }

  JetVector x = sys.ls->solve(rhs);
  JetVector resid = sys.ls->residual(x, rhs);
  double rmax = 0.0;
  for (const Jet& r : resid) rmax = std::max(rmax, r.max_abs_coeff());
  if (rmax / rhs_scale > consistency_tol)
    throw AxiomInconsistency(
        "connection axioms are inconsistent for this structure (residual " +
            std::to_string(rmax / rhs_scale) + ")",
        rmax / rhs_scale);

  Connection conn;
  conn.mode = ev.mode;
  conn.rank_margin = sys.ls->rank_margin();
  conn.gamma = JetTensor::zeros({dim, dim, dim}, dim, bord);
  auto xidx = [&](int A, int b, int c) { return (A * hd + b) * hd + c; };
  for (int A = 0; A < dim; ++A)
    for (int b = 0; b < hd; ++b)
      for (int c = 0; c < hd; ++c) conn.gamma(A, b, c) = x[xidx(A, b, c)];

  conn.tau = JetTensor::zeros({hd, hd}, dim, bord);
  for (int b = 0; b < hd; ++b)
    for (int c = 0; c < hd; ++c)
      conn.tau(b, c) = (conn.gamma(R, b, c) - ev.cfun(R, b, c)) * ev.eps(c);
  return conn;
}

JetTensor covariant_derivative(const JetTensor& T, const Connection& conn,
                               const StructureEval& ev) {
  const int dim = ev.dim();
  const int rank = T.rank();
  const std::vector<int>& tdims = T.dims();
  const Jet& probe = T.flat_data()[0];
  if (probe.order() < 1)
    throw OrderExhausted("covariant derivative: component jets have no orders left");
  const int tgt = probe.order() - 1;

  std::vector<int> odims{dim};
  odims.insert(odims.end(), tdims.begin(), tdims.end());
  JetTensor out(odims);

  // flat iteration over the T index tuple
  std::size_t count = T.flat_data().size();
  std::vector<int> idx(rank, 0);
  std::vector<std::size_t> strides(rank, 1);
  for (int k = rank - 2; k >= 0; --k)
    strides[k] = strides[k + 1] * static_cast<std::size_t>(tdims[k + 1]);

  for (int A = 0; A < dim; ++A) {
    for (std::size_t f = 0; f < count; ++f) {
      std::size_t rem = f;
      for (int k = 0; k < rank; ++k) {
        idx[k] = static_cast<int>(rem / strides[k]);
        rem %= strides[k];
      }
      Jet val = ev.apply_field(A, T.flat_data()[f]);
      for (int k = 0; k < rank; ++k) {
        const int B = idx[k];
        for (int C = 0; C < tdims[k]; ++C) {
          const Jet& g = conn.gamma(A, B, C);
          if (g.max_abs_coeff() == 0.0) continue;
          const std::ptrdiff_t off =
              static_cast<std::ptrdiff_t>(C - B) * static_cast<std::ptrdiff_t>(strides[k]);
          std::size_t fc = static_cast<std::size_t>(static_cast<std::ptrdiff_t>(f) + off);
          val -= truncated(g, tgt) * truncated(T.flat_data()[fc], tgt);
        }
        // a horizontal slot must not receive a Reeb component
        if (tdims[k] == ev.hdim() &&
            conn.gamma(A, B, ev.reeb()).max_abs_coeff() != 0.0)
          throw ArityError(
              "covariant derivative: connection does not preserve the "
              "horizontal bundle but the tensor has horizontal-only slots");
      }
      std::size_t of = (static_cast<std::size_t>(A)) * count + f;
      out.flat_data()[of] = val;
    }
  }
  return out;
}

JetTensor frame_differential(const Jet& f, const StructureEval& ev) {
  const int dim = ev.dim();
  JetTensor df({dim});
  for (int A = 0; A < dim; ++A) df(A) = ev.apply_field(A, f);
  return df;
}

ResidualReport connection_axiom_residuals(const Connection& conn,
                                          const StructureEval& ev, double tol) {
  ResidualReport rep;
  rep.suite = "connection_axioms";
  const int hd = ev.hdim(), dim = ev.dim(), R = ev.reeb();
  const double s = ev.s(), sigma = ev.sigma();
  const int bord = ev.order - 1;

  {  // nabla g = 0 including the Reeb extension.
    JetTensor g = JetTensor::zeros({dim, dim}, dim, bord);
    for (int A = 0; A < dim; ++A) g(A, A) = Jet::constant(dim, bord, ev.eps(A));
    JetTensor dg = covariant_derivative(g, conn, ev);
    ResidualAccum acc;
    for (const Jet& j : dg.flat_data()) acc.take(j.value());
    rep.add("nabla_g", ev.point, acc.norm(), tol);
  }

  {  // nabla I = 0: isg(b) Gamma^d_{A,ih(b)} - isg(ih(d)) Gamma^{ih(d)}_{A,b}.
    ResidualAccum acc;
    for (int A = 0; A < dim; ++A)
      for (int b = 0; b < hd; ++b)
        for (int d = 0; d < hd; ++d) {
          double lhs = ev.isg(b) * conn.gamma(A, ev.ih(b), d).value();
          double rhsv = ev.isg(ev.ih(d)) * conn.gamma(A, b, ev.ih(d)).value();
          acc.take(lhs - rhsv);
          acc.term(lhs);
        }
    rep.add("nabla_I", ev.point, acc.norm(), tol);
  }

  {  // nabla eta = 0 and nabla Reeb = 0: Reeb rows and columns of gamma vanish.
    ResidualAccum acc;
    for (int A = 0; A < dim; ++A)
      for (int C = 0; C < dim; ++C) {
        acc.take(conn.gamma(A, R, C).value());
        for (int b = 0; b < hd; ++b) acc.take(conn.gamma(A, b, R).value());
      }
    rep.add("nabla_reeb_eta", ev.point, acc.norm(), tol);
  }

  {  // horizontal torsion: T(e_a,e_b) = sigma * d(eta)(e_a,e_b) * Reeb.
    ResidualAccum acc;
    for (int a = 0; a < hd; ++a) {
      for (int b = a + 1; b < hd; ++b) {
        for (int c = 0; c < hd; ++c) {
          double th = conn.gamma(a, b, c).value() - conn.gamma(b, a, c).value() -
                      ev.cfun(a, b, c).value();
          acc.take(th);
          acc.term(ev.cfun(a, b, c).value());
        }
        // vertical part equals -c^R_{ab}; required value sigma * 2 omega(a,b)
        double tv = -ev.cfun(a, b, R).value() - sigma * 2.0 * ev.omega(a, b);
        acc.take(tv);
        acc.term(2.0 * ev.omega(a, b));
      }
    }
    rep.add("torsion_horizontal", ev.point, acc.norm(), tol);
  }

  {  // T(Reeb, e_a) horizontal, tau symmetric, tau I-compatible.
    ResidualAccum acc;
    for (int b = 0; b < hd; ++b) {
      acc.take(-ev.cfun(R, b, R).value());  // vertical part of T(Reeb, e_b)
      for (int c = 0; c < hd; ++c) {
        acc.take(conn.tau(b, c).value() - conn.tau(c, b).value());
        acc.take(ev.isg(b) * ev.isg(c) * conn.tau(ev.ih(b), ev.ih(c)).value() -
                 s * conn.tau(b, c).value());
        acc.term(conn.tau(b, c).value());
      }
    }
    rep.add("torsion_endomorphism", ev.point, acc.norm(), tol);
  }

  {  // tau(X,Y) = (1/2)(L_Reeb g)(X,Y) = (1/2)[g(T(R,X),Y)+g(T(R,Y),X)] check
     // via brackets: (L_xi g)(e_b,e_c) = -g([xi,e_b],e_c) - g(e_b,[xi,e_c]).
    ResidualAccum acc;
    for (int b = 0; b < hd; ++b)
      for (int c = 0; c < hd; ++c) {
        double lie = -ev.cfun(R, b, c).value() * ev.eps(c) -
                     ev.cfun(R, c, b).value() * ev.eps(b);
        acc.take(conn.tau(b, c).value() - 0.5 * lie);
        acc.term(lie);
      }
    rep.add("tau_lie_derivative", ev.point, acc.norm(), tol);
  }

  {  // complete trace-freeness of tau.
    ResidualAccum acc;
    acc.take(signed_trace(conn.tau, ev).value());
    acc.take(signed_pair_trace(conn.tau, ev).value());
    acc.term(conn.tau.max_abs_value());
    rep.add("tau_trace_free", ev.point, acc.norm(), tol);
  }

  return rep;
}

Connection levi_civita_connection(const StructureEval& ev) {
  const int dim = ev.dim();
  const int bord = ev.order - 1;
  Connection conn;
  conn.mode = ev.mode;
  conn.rank_margin = 1.0;
  conn.gamma = JetTensor::zeros({dim, dim, dim}, dim, bord);
  // Koszul with constant frame metric:
  // 2 g(nabla_A B, C) = g([A,B],C) - g([A,C],B) - g([B,C],A).
  for (int A = 0; A < dim; ++A)
    for (int B = 0; B < dim; ++B)
      for (int C = 0; C < dim; ++C) {
        Jet low = ev.cfun(A, B, C) * ev.eps(C) - ev.cfun(A, C, B) * ev.eps(B) -
                  ev.cfun(B, C, A) * ev.eps(A);
        conn.gamma(A, B, C) = low * (0.5 * ev.eps(C));
      }
  conn.tau = JetTensor::zeros({ev.hdim(), ev.hdim()}, dim, bord);
  return conn;
}

}  // namespace paracontact

#pragma once

#include <functional>
#include <span>
#include <vector>

#include "paracontact/jet.hpp"

namespace paracontact {

/// Scalar function on the group, evaluable on jet-valued coordinates so that
/// compositions with group maps (inversion, dilations, translations) need no
/// separate jet-composition machinery.
struct GroupFunction {
  int n = 1;
  std::function<Jet(std::span<const Jet>)> eval;
  /// Distance proxy to the singular set (evaluation rejects below `guard`);
  /// null means entire.
  std::function<double(std::span<const double>)> singular_margin;
  double guard = 1e-6;

  /// Jet of the function at a point (coordinates u_1..u_n, v_1..v_n, t).
  Jet at(std::span<const double> point, int order) const;
};

/// Which vertical-coefficient sign the frame fields carry.  The two choices
/// are conjugate under t -> -t; `plus` matches the structure frame used by
/// the rest of the engine.
enum class FrameConvention { plus, minus };

/// Solution family phi_eps = (4 n^2 eps^2 / ((eps^2+|u|^2-|v|^2)^2 - t^2))^{n/2}.
GroupFunction phi_epsilon_fn(int n, double eps);

/// Convenience: phi_eps evaluated at a point.
double phi_epsilon(int n, double eps, std::span<const double> p);

/// f = ((1 + |u|^2 - |v|^2)^2 - t^2)^{-n/2}.
GroupFunction f_standard(int n);

GroupFunction constant_fn(int n, double c);
GroupFunction polynomial_fn(int n, Polynomial p);

/// Sum over k of (U_k^2 - V_k^2) phi at p, via second-order jets of the
/// left-invariant frame fields.
double ultrahyperbolic_L(const GroupFunction& phi, std::span<const double> p,
                         FrameConvention conv = FrameConvention::plus);

/// | L phi + phi^{(n+2)/n} | / max(1, |phi^{(n+2)/n}|) at p.
double yamabe_residual(const GroupFunction& phi, int n, std::span<const double> p,
                       FrameConvention conv = FrameConvention::plus);

/// Kelvin transform (K phi)(p) = ((|u|^2-|v|^2)^2 - t^2)^{-n/2} phi(p') with
/// p' the inversion image.
GroupFunction kelvin(const GroupFunction& phi, int n);

/// p -> lambda^n phi(lambda u, lambda v, lambda^2 t); the weight lambda^n
/// preserves the Yamabe equation.
GroupFunction dilate(const GroupFunction& phi, int n, double lambda);

/// p -> phi(g0 o p).
GroupFunction translate(const GroupFunction& phi, int n, std::vector<double> g0);

}  // namespace paracontact

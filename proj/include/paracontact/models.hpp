#pragma once

#include <span>
#include <vector>

#include "paracontact/structure.hpp"

namespace paracontact {

/// Hyperbolic Heisenberg group with its left-invariant structure.  The frame
/// is U_k = d/du_k + 2 v_k d/dt, V_k = d/dv_k - 2 u_k d/dt, Reeb = 2 d/dt and
/// the contact form is -dt/2 - sum(u_k dv_k - v_k du_k); the vertical
/// coefficients of U_k, V_k carry the sign that makes them horizontal for
/// this form.  Everything is polynomial, so evaluations are exact.
StructureSpec heisenberg_spec(int n);

/// Positive-definite analogue: the standard Heisenberg group as a flat CR
/// pseudohermitian structure.
StructureSpec cr_heisenberg_spec(int n);

/// Hyperboloid sum x^2 - sum y^2 = 1 with its induced para-Sasakian structure,
/// in the graph chart x_0 = +sqrt(1 + sum y^2 - sum' x^2) with coordinates
/// (y_0, x_1, y_1, ..., x_n, y_n).  `chart_center`, when given, must lie on
/// the hyperboloid with x_0 bounded away from zero.
StructureSpec hyperboloid_spec(int n, std::span<const double> chart_center = {});

/// Graph perturbation of the hyperboloid: the level set
/// sum x^2 - sum y^2 = 1 + P(chart coords) with its induced structure.  Used
/// as a valid, generically non-flat structure (negative control).
StructureSpec perturbed_hyperboloid_spec(int n, const Polynomial& perturbation);

/// Round sphere S^{2n+1} in C^{n+1} with its standard pseudohermitian
/// structure (CR mode), same graph-chart machinery as the hyperboloid.
StructureSpec sphere_spec(int n);

/// A 3-dimensional Sasakian structure over a conformally flat surface metric
/// lambda^2 (dx^2 + dy^2), lambda^2 = 1 + x^2, with zero Webster torsion and
/// nonconstant Webster scalar curvature.
StructureSpec sasakian3_spec();

// --- Cayley transform and inversion ---

struct CayleyImage {
  std::vector<double> group_point;  // (u_1..u_n, v_1..v_n, t)
  double pullback_factor;           // 1 / ((1+x_0)^2 - y_0^2)
};

/// Cayley transform of an ambient hyperboloid point (x_0, y_0, ..., x_n, y_n).
/// Rejects points within `guard` of the singular set (1+x_0)^2 = y_0^2.
CayleyImage cayley(std::span<const double> hs_point, int n, double guard = 1e-6);

/// Ambient coordinates of a hyperboloid chart point.
std::vector<double> hyperboloid_chart_to_ambient(int n, std::span<const double> chart);

/// Residual of the contact-form pullback identity of the Cayley transform at
/// a chart point: || C^* Theta - factor * eta || (normalized max-abs).
double cayley_pullback_residual(int n, std::span<const double> chart_point);

/// Residual of the para Cauchy-Riemann equations for the ball-to-domain
/// extension of the Cayley map at an ambient point off the singular set.
double cayley_pcr_residual(int n, std::span<const double> ambient_point,
                           double guard = 1e-6);

/// Inversion of the group centered at the set | |u|^2-|v|^2 | = |t|.
std::vector<double> inversion(std::span<const double> p, int n, double guard = 1e-6);

/// Inversion applied to jet-valued coordinates (used by the Kelvin transform).
std::vector<Jet> inversion_jets(std::span<const Jet> p, int n, double guard = 1e-6);

/// Group law consistent with the left-invariant frame above:
/// (a o b) = (a_p + b_p, a_t + b_t - 2 sum(a_u b_v - a_v b_u)).
std::vector<double> group_multiply(std::span<const double> a,
                                   std::span<const double> b, int n);

/// Jet version of the group law with a constant left factor.
std::vector<Jet> left_translate_jets(std::span<const double> g0,
                                     std::span<const Jet> p, int n);

}  // namespace paracontact

#pragma once

#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "paracontact/jet.hpp"
#include "paracontact/report.hpp"
#include "paracontact/tensor.hpp"

namespace paracontact {

/// Structure kind: paracontact hermitian (I^2 = +id, neutral metric) or
/// pseudohermitian CR (J^2 = -id, positive Levi form).
enum class Mode { paracontact, cr };

/// Sign s with I^2 = s id on the horizontal bundle.
inline double mode_s(Mode m) { return m == Mode::paracontact ? 1.0 : -1.0; }

/// Sign sigma = eta(Reeb) = g(Reeb, Reeb).
inline double mode_sigma(Mode m) { return -mode_s(m); }

/// Frame and contact-form jets at one point; all jets share one chart and order.
struct FieldSample {
  std::vector<std::vector<Jet>> frame;  // [field A][coordinate i]; A == 2n is the Reeb field
  std::vector<Jet> eta;                 // [coordinate i]
};

/// Evaluates the defining fields of a structure at a point, to a jet order.
class FieldProvider {
 public:
  virtual ~FieldProvider() = default;
  virtual FieldSample sample(std::span<const double> point, int order) const = 0;
};

/// Polynomial or rational coefficient function of the chart coordinates.
struct RationalFn {
  Polynomial num;
  Polynomial den;  // empty means denominator 1

  Jet at(std::span<const double> point, int order) const;
};

/// Provider backed by explicit coefficient functions (the serializable case).
class PolynomialProvider : public FieldProvider {
 public:
  PolynomialProvider(std::vector<std::vector<RationalFn>> frame,
                     std::vector<RationalFn> eta)
      : frame_(std::move(frame)), eta_(std::move(eta)) {}

  FieldSample sample(std::span<const double> point, int order) const override;

  const std::vector<std::vector<RationalFn>>& frame_fns() const { return frame_; }
  const std::vector<RationalFn>& eta_fns() const { return eta_; }

 private:
  std::vector<std::vector<RationalFn>> frame_;
  std::vector<RationalFn> eta_;
};

/// A paracontact hermitian (or CR pseudohermitian) structure given by an
/// adapted frame: e_1..e_n, Ie_1..Ie_n, Reeb, plus the contact form.
///
/// The horizontal frame is orthonormal with metric signs fixed by the mode
/// (eps(e_s) = +1, eps(Ie_s) = -s) and the pairing I e_s = e_{n+s},
/// I e_{n+s} = s e_s.
struct StructureSpec {
  std::string name;
  int n = 1;
  Mode mode = Mode::paracontact;
  std::vector<std::string> coords;  // 2n+1 chart coordinate names
  std::shared_ptr<const FieldProvider> fields;

  int dim() const { return 2 * n + 1; }
  int hdim() const { return 2 * n; }
};

/// All pointwise jet data derived from a spec at one point.
struct StructureEval {
  int n = 1;
  Mode mode = Mode::paracontact;
  std::vector<double> point;
  int order = 0;

  FieldSample fields;  // order as requested
  JetTensor cfun;      // [A][B][C]: [E_A,E_B] = cfun^C_{AB} E_C, order-1 jets

  int dim() const { return 2 * n + 1; }
  int hdim() const { return 2 * n; }
  int reeb() const { return 2 * n; }

  double s() const { return mode_s(mode); }
  double sigma() const { return mode_sigma(mode); }

  /// Metric sign of a frame vector (Reeb index allowed).
  double eps(int a) const { return a < n ? 1.0 : (a < 2 * n ? -s() : sigma()); }

  /// Index of I e_a within the horizontal frame.
  int ih(int a) const { return a < n ? a + n : a - n; }

  /// Sign in I e_a = isg(a) e_{ih(a)}.
  double isg(int a) const { return a < n ? 1.0 : s(); }

  /// Frame metric g(E_A, E_B) (constant in an adapted frame).
  double g(int A, int B) const { return A == B ? eps(A) : 0.0; }

  /// Fundamental 2-form omega(e_a, e_b) = g(I e_a, e_b) on the horizontal frame.
  double omega(int a, int b) const { return ih(a) == b ? isg(a) * eps(b) : 0.0; }

  /// Directional derivative of a scalar jet along frame field E_A.
  Jet apply_field(int A, const Jet& f) const;

  /// eta evaluated on a frame field, as a jet.
  Jet eta_on_field(int A) const;

  /// d(eta)(E_A, E_B) from the exterior-derivative formula, order-1 jets.
  Jet deta(int A, int B) const;
};

/// Evaluates all pointwise structural objects.  Throws FrameDegenerate when
/// the frame matrix is singular at the point; chart errors propagate from the
/// provider.
StructureEval evaluate(const StructureSpec& spec, std::span<const double> point,
                       int order);

/// Residuals for the compatibility and integrability axioms: I^2 = s id,
/// g(IX,IY) = -s g(X,Y), eta on the frame, d(eta) vs 2 omega, d(eta)(Reeb,.),
/// Nijenhuis tensor, and horizontality of [IX,Y]+[X,IY].  Reports, never
/// throws, on finite inputs.
ResidualReport check_compatibility(const StructureEval& ev, double tol = 1e-9);

/// Signed trace sum_a eps_a T(e_a, e_a) of a horizontal bilinear form.
Jet signed_trace(const JetTensor& T, const StructureEval& ev);

/// Signed paired trace sum_a eps_a T(e_a, I e_a).
Jet signed_pair_trace(const JetTensor& T, const StructureEval& ev);

// --- serialization (spec JSON format) ---

StructureSpec spec_from_json(const nlohmann::json& j);
nlohmann::json spec_to_json(const StructureSpec& spec);

StructureSpec load_spec_file(const std::string& path);

}  // namespace paracontact

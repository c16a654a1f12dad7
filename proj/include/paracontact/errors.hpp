#pragma once

#include <stdexcept>
#include <string>

namespace paracontact {

/// Base class for all engine errors.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// --- jet layer ---

/// Arithmetic on jets with different variable count or truncation order.
struct JetMismatch : Error {
  using Error::Error;
};

/// Division (or negative power) by a jet whose constant term vanishes.
struct DegenerateJet : Error {
  using Error::Error;
};

/// Analytic function evaluated outside its real domain.
struct DomainError : Error {
  using Error::Error;
};

/// A derivative was requested from a jet that has no orders left.
struct OrderExhausted : Error {
  using Error::Error;
};

/// Linear system whose constant-term matrix is (numerically) singular.
struct SingularSystem : Error {
  SingularSystem(const std::string& what, double cond)
      : Error(what), condition(cond) {}
  double condition;
};

// --- structure layer ---

/// Frame matrix not invertible at the evaluation point.
struct FrameDegenerate : Error {
  using Error::Error;
};

/// Evaluation point lies outside the coordinate chart.
struct ChartDomain : Error {
  using Error::Error;
};

/// Orthonormalization ran out of usable pivot candidates.
struct ChartDegenerate : Error {
  using Error::Error;
};

/// Tensor with the wrong number of slots or slot sizes.
struct ArityError : Error {
  using Error::Error;
};

// --- connection layer ---

/// Axiom system with rank-deficient constant term: no unique connection.
struct NonUniqueConnection : Error {
  using Error::Error;
};

/// Axiom system inconsistent beyond tolerance (structure violates the
/// hypotheses of the uniqueness theorem).
struct AxiomInconsistency : Error {
  AxiomInconsistency(const std::string& what, double res)
      : Error(what), residual(res) {}
  double residual;
};

/// Operation requested in a mode or dimension where it is not defined.
struct ModeError : Error {
  using Error::Error;
};

// --- model / Yamabe layer ---

/// Point within guard distance of a singular set.
struct NearSingularSet : Error {
  using Error::Error;
};

/// Fractional power of a negative radicand.
struct NegativeBase : Error {
  using Error::Error;
};

}  // namespace paracontact

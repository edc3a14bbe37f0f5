#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace scpulse {

/// Base class for every numerical failure raised by the solver pipelines.
///
/// Each subclass carries a stable name() that front ends print verbatim on
/// the diagnostic stream.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
  virtual std::string_view name() const noexcept = 0;
};

/// A map that must be nondecreasing (after unwrapping) has a negative step.
class NonMonotone : public NumericalError {
 public:
  using NumericalError::NumericalError;
  std::string_view name() const noexcept override { return "NonMonotone"; }
};

/// The initial energy h is too close to 1; the factors 1/(1-h) blow up.
class HNearOne : public NumericalError {
 public:
  using NumericalError::NumericalError;
  std::string_view name() const noexcept override { return "HNearOne"; }
};

/// The direct Eulerian solver detected gradient growth past its guard.
class SmoothnessLost : public NumericalError {
 public:
  using NumericalError::NumericalError;
  std::string_view name() const noexcept override { return "SmoothnessLost"; }
};

/// An invariant residual exceeded the configured drift guard.
class DriftExceeded : public NumericalError {
 public:
  using NumericalError::NumericalError;
  std::string_view name() const noexcept override { return "DriftExceeded"; }
};

/// Picard iteration for the characteristic label failed to contract.
class NoContraction : public NumericalError {
 public:
  using NumericalError::NumericalError;
  std::string_view name() const noexcept override { return "NoContraction"; }
};

/// Too many Eulerian nodes fell below the V floor to form integrals.
class MaskTooLarge : public NumericalError {
 public:
  using NumericalError::NumericalError;
  std::string_view name() const noexcept override { return "MaskTooLarge"; }
};

/// Throws HNearOne when |1-h| is below the admissible gap.
void require_h_admissible(double h);

inline constexpr double kHGap = 1e-8;

}  // namespace scpulse

#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "scpulse/eulerian.hpp"
#include "scpulse/grid.hpp"
#include "scpulse/integrator.hpp"

namespace scpulse {

/// Time series and per-snapshot maps feeding the fixed-point equation for the
/// adapted label beta, where (1+h) beta = y + int_0^y u_x^2.
struct SourceTerms {
  double h = 0.0;
  std::vector<double> times;
  std::vector<double> A;         // int_0^t (u^2 u_x^2)(s, 0) ds
  std::vector<double> u0sq;      // u^2(t, 0)
  std::vector<double> int_u0sq;  // int_0^t u^2(s, 0) ds
  std::vector<double> P1;
  std::vector<MonotoneMap> mu;   // mu_t(y) = y + int_0^y u_x^2, winding 1 + E(t)
  std::vector<GridFn> mu_slope;  // 1 + u_x^2
  std::vector<GridFn> u;
  std::vector<GridFn> ux;

  std::size_t size() const noexcept { return times.size(); }
  /// Unwrapped position y with mu_{t_k}(y) = (1+h) beta.
  double position(std::size_t k, double beta) const;
  /// u(t_k, y) from the Hermite interpolant with slopes u_x.
  double u_at(std::size_t k, double y) const;
  /// G(t_k, beta) = -2 P1 (u(t_k, y(beta)) - u(t_k, 0)).
  double G(std::size_t k, double beta) const;
};

SourceTerms accumulate_sources(std::span<const EulerianField> etraj, double h);

struct CharTrace {
  double xi = 0.0;
  std::vector<double> times;
  std::vector<double> beta;
  std::vector<double> ychar;
  int picard_iters = 0;
  double contraction_ratio = 0.0;
};

inline constexpr int kMaxPicardIterations = 50;

/// Picard iteration for
///   beta(t) = xi + (int_0^t G(s, beta) ds - int_0^t u^2(s, 0) ds - A(t)) / (1+h)
/// with trapezoid time integrals over the snapshot grid. Throws NoContraction
/// when 50 iterations do not reach tol or the last ratio is >= 1.
CharTrace trace_beta(const SourceTerms& st, double xi, double tol);

struct CharacteristicCheck {
  double ode_residual = 0.0;
  double lagrangian_mismatch = 0.0;
  double slope_residual = 0.0;
  std::vector<double> ode_residuals;  // per time; entry k covers [t_{k-1}, t_k], entry 0 is 0
};

/// ode_residual: forward difference of ychar against the mean of -u^2 at the
/// two ends of each interval. lagrangian_mismatch: distance to y(t_k, xi) of
/// the Lagrangian trajectory. slope_residual: u along the curve against
/// u(0, y(0)) + int_0^t H(s, y(s)) ds.
CharacteristicCheck verify_characteristic(const CharTrace& trace, const Trajectory& traj,
                                          std::span<const EulerianField> etraj);

struct LipschitzReport {
  double y_ratio = 0.0;  // max |dy| / ((1+h) |dbeta|)
  double u_ratio = 0.0;  // max |du| / (((1+h)/2) |dbeta|)
  double max_ratio() const noexcept { return y_ratio > u_ratio ? y_ratio : u_ratio; }
};

/// Ratios of the observed increments to the Lipschitz bounds over adjacent
/// pairs of m equally spaced labels per period, at every stored time. Checking
/// adjacent pairs suffices: the bound for any pair follows by summation.
LipschitzReport lipschitz_check(const SourceTerms& st, std::size_t m);

/// True when, at every stored time, ychar is nondecreasing in the launch label
/// (traces are sorted by xi first).
bool non_crossing(std::span<const CharTrace> traces);

}  // namespace scpulse

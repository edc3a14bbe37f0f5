#pragma once

#include <cstddef>
#include <optional>
#include <string_view>
#include <vector>

#include "scpulse/lagrangian.hpp"

namespace scpulse {

enum class Scheme { rk4, heun };

std::string_view to_string(Scheme s) noexcept;
Scheme parse_scheme(std::string_view name);

struct RunConfig {
  std::size_t n = 256;
  double dt = 5e-4;
  double t_end = 1.0;
  /// Snapshot times in [0, t_end]; 0 and t_end are always added.
  std::vector<double> output_times;
  bool augmented = false;
  Scheme scheme = Scheme::rk4;
  /// Abort with DriftExceeded when an identity residual exceeds this.
  std::optional<double> drift_guard;

  /// Throws std::invalid_argument when an invariant is violated.
  void validate() const;

  /// count >= 2 equally spaced times from 0 to t_end inclusive.
  static std::vector<double> uniform_times(double t_end, std::size_t count);
};

struct StepRecord {
  double t = 0.0;
  double Etilde = 0.0;
  double Ftilde = 0.0;
  InvariantRecord invariants;
};

struct Trajectory {
  std::vector<LagrangianState> states;      // strictly increasing t, first at 0
  std::vector<StepRecord> conserved_log;    // one entry per step plus t = 0
  std::vector<InvariantRecord> invariant_log;  // one per stored state

  std::vector<double> times() const;
};

/// Positive snapshot times of cfg plus t_end, sorted and unique; empty when
/// t_end = 0.
std::vector<double> snapshot_targets(const RunConfig& cfg);

/// Size of the next step towards target: dt, or the remainder when the step
/// would overshoot or leave a sliver below 1e-9 dt.
double next_step(double t, double target, double dt);

/// One explicit step of size dt (negative dt integrates backwards).
LagrangianState step(const LagrangianState& s, double dt, Scheme scheme = Scheme::rk4);

/// Fixed-step march from s0 to cfg.t_end; the last step before each snapshot
/// is shortened to land on it exactly.
Trajectory integrate(const LagrangianState& s0, const RunConfig& cfg);

}  // namespace scpulse

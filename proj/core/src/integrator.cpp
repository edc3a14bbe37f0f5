#include "scpulse/integrator.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>
#include <string>

#include "scpulse/errors.hpp"

namespace scpulse {
namespace {

struct Term {
  double weight;
  const StateDerivative* d;
};

GridFn accumulate(const GridFn& base, std::initializer_list<Term> terms,
                  const GridFn StateDerivative::*field) {
  GridFn out = base;
  for (const Term& term : terms) {
    const GridFn& g = term.d->*field;
    for (std::size_t j = 0; j < out.size(); ++j) out[j] += term.weight * g[j];
  }
  return out;
}

GridFn accumulate_opt(const GridFn& base, std::initializer_list<Term> terms,
                      const std::optional<GridFn> StateDerivative::*field) {
  GridFn out = base;
  for (const Term& term : terms) {
    const GridFn& g = *(term.d->*field);
    for (std::size_t j = 0; j < out.size(); ++j) out[j] += term.weight * g[j];
  }
  return out;
}

// s + sum_i w_i d_i, evaluated field by field in a fixed order.
LagrangianState combine(const LagrangianState& s, double t_new, std::initializer_list<Term> terms) {
  LagrangianState out;
  out.t = t_new;
  out.h = s.h;
  out.y = MonotoneMap(accumulate(s.y.as_gridfn(), terms, &StateDerivative::dy), s.y.winding());
  out.U = accumulate(s.U, terms, &StateDerivative::dU);
  out.V = accumulate(s.V, terms, &StateDerivative::dV);
  out.W = accumulate(s.W, terms, &StateDerivative::dW);
  out.Q = accumulate(s.Q, terms, &StateDerivative::dQ);
  if (s.augmented()) {
    out.yxi = accumulate_opt(*s.yxi, terms, &StateDerivative::dyxi);
    out.Uxi = accumulate_opt(*s.Uxi, terms, &StateDerivative::dUxi);
  }
  return out;
}

StepRecord record(const LagrangianState& s, const InvariantRecord& inv) {
  const Conserved c = conserved(s);
  return {s.t, c.Etilde, c.Ftilde, inv};
}

}  // namespace

std::string_view to_string(Scheme s) noexcept {
  return s == Scheme::rk4 ? "rk4" : "heun";
}

Scheme parse_scheme(std::string_view name) {
  if (name == "rk4") return Scheme::rk4;
  if (name == "heun") return Scheme::heun;
  throw std::invalid_argument("unknown scheme '" + std::string(name) + "'");
}

void RunConfig::validate() const {
  if (n < kMinGridSize) throw std::invalid_argument("n must be >= 8");
  if (!(dt > 0.0) || !std::isfinite(dt)) throw std::invalid_argument("dt must be > 0");
  if (!(t_end >= 0.0) || !std::isfinite(t_end)) throw std::invalid_argument("t_end must be >= 0");
  for (std::size_t i = 0; i < output_times.size(); ++i) {
    const double t = output_times[i];
    if (!(t >= 0.0 && t <= t_end)) {
      throw std::invalid_argument("output time " + std::to_string(t) + " outside [0, t_end]");
    }
    if (i > 0 && !(t >= output_times[i - 1])) {
      throw std::invalid_argument("output times must be sorted");
    }
  }
  if (drift_guard && !(*drift_guard > 0.0)) {
    throw std::invalid_argument("drift guard must be positive");
  }
}

std::vector<double> RunConfig::uniform_times(double t_end, std::size_t count) {
  if (count < 2) return {0.0, t_end};
  std::vector<double> t(count);
  for (std::size_t i = 0; i < count; ++i) {
    t[i] = t_end * static_cast<double>(i) / static_cast<double>(count - 1);
  }
  t.back() = t_end;
  return t;
}

std::vector<double> Trajectory::times() const {
  std::vector<double> t;
  t.reserve(states.size());
  for (const auto& s : states) t.push_back(s.t);
  return t;
}

std::vector<double> snapshot_targets(const RunConfig& cfg) {
  std::vector<double> targets;
  if (cfg.t_end == 0.0) return targets;
  for (double t : cfg.output_times) {
    if (t > 0.0) targets.push_back(t);
  }
  targets.push_back(cfg.t_end);
  std::sort(targets.begin(), targets.end());
  targets.erase(std::unique(targets.begin(), targets.end()), targets.end());
  return targets;
}

double next_step(double t, double target, double dt) {
  if (t + dt > target - 1e-9 * dt) return target - t;
  return dt;
}

LagrangianState step(const LagrangianState& s, double dt, Scheme scheme) {
  const double t1 = s.t + dt;
  const StateDerivative k1 = rhs(s);
  if (scheme == Scheme::heun) {
    const StateDerivative k2 = rhs(combine(s, t1, {{dt, &k1}}));
    return combine(s, t1, {{0.5 * dt, &k1}, {0.5 * dt, &k2}});
  }
  const double half = 0.5 * dt;
  const StateDerivative k2 = rhs(combine(s, s.t + half, {{half, &k1}}));
  const StateDerivative k3 = rhs(combine(s, s.t + half, {{half, &k2}}));
  const StateDerivative k4 = rhs(combine(s, t1, {{dt, &k3}}));
  const double w1 = dt / 6.0;
  const double w2 = dt / 3.0;
  return combine(s, t1, {{w1, &k1}, {w2, &k2}, {w2, &k3}, {w1, &k4}});
}

Trajectory integrate(const LagrangianState& s0, const RunConfig& cfg) {
  cfg.validate();
  const std::vector<double> targets = snapshot_targets(cfg);

  const double tiny = 1e-12 * std::max(1.0, cfg.t_end);
  auto check = [&](const LagrangianState& s) {
    InvariantRecord inv = invariant_residuals(s);
    if (cfg.drift_guard && inv.identity_max() > *cfg.drift_guard) {
      std::ostringstream os;
      os.precision(6);
      os << "invariant residual " << inv.identity_max() << " exceeds guard " << *cfg.drift_guard
         << " at t = " << s.t;
      throw DriftExceeded(os.str());
    }
    return inv;
  };

  Trajectory traj;
  LagrangianState state = s0;
  state.t = 0.0;
  const InvariantRecord inv0 = check(state);
  traj.states.push_back(state);
  traj.invariant_log.push_back(inv0);
  traj.conserved_log.push_back(record(state, inv0));

  for (double target : targets) {
    InvariantRecord inv = inv0;
    while (target - state.t > tiny) {
      state = step(state, next_step(state.t, target, cfg.dt), cfg.scheme);
      if (std::abs(target - state.t) <= tiny) state.t = target;
      inv = check(state);
      traj.conserved_log.push_back(record(state, inv));
    }
    state.t = target;
    traj.states.push_back(state);
    traj.invariant_log.push_back(inv);
  }
  return traj;
}

}  // namespace scpulse

#include "scpulse/reference.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "scpulse/errors.hpp"

namespace scpulse {

RefDerivative ref_rhs_full(const RefState& r, Derivative method) {
  require_h_admissible(r.h);
  const GridFn ux = diff(r.u, method);
  const GridFn ux2 = ux * ux;
  const GridFn g = inv_deriv(r.u - r.u * ux2);
  RefDerivative d;
  d.f = quad_period((1.0 - ux2) * g) / (1.0 - r.h);
  d.du = r.u * r.u * ux + g - d.f;
  return d;
}

GridFn ref_rhs(const RefState& r, Derivative method) { return ref_rhs_full(r, method).du; }

RefState ref_step(const RefState& r, double dt, Derivative method) {
  const double half = 0.5 * dt;
  auto shifted = [&](const GridFn& k, double w, double t) {
    return RefState{t, r.u + w * k, r.h};
  };
  const GridFn k1 = ref_rhs(r, method);
  const GridFn k2 = ref_rhs(shifted(k1, half, r.t + half), method);
  const GridFn k3 = ref_rhs(shifted(k2, half, r.t + half), method);
  const GridFn k4 = ref_rhs(shifted(k3, dt, r.t + dt), method);
  RefState out{r.t + dt, r.u, r.h};
  for (std::size_t j = 0; j < out.u.size(); ++j) {
    out.u[j] += dt / 6.0 * k1[j] + dt / 3.0 * k2[j] + dt / 3.0 * k3[j] + dt / 6.0 * k4[j];
  }
  return out;
}

std::vector<RefState> ref_integrate(const GridFn& u0, const RunConfig& cfg, Derivative method) {
  cfg.validate();
  const GridFn ux0 = diff(u0, method);
  RefState state{0.0, u0, quad_period(ux0 * ux0)};
  require_h_admissible(state.h);
  const double limit = kSmoothnessFactor * ux0.max_abs();
  const double tiny = 1e-12 * std::max(1.0, cfg.t_end);

  std::vector<RefState> out{state};
  for (double target : snapshot_targets(cfg)) {
    while (target - state.t > tiny) {
      state = ref_step(state, next_step(state.t, target, cfg.dt), method);
      if (std::abs(target - state.t) <= tiny) state.t = target;
      const double slope = diff(state.u, method).max_abs();
      if (!(slope <= limit) || !state.u.all_finite()) {
        std::ostringstream os;
        os << "max|u_x| = " << slope << " exceeds " << limit << " at t = " << state.t;
        throw SmoothnessLost(os.str());
      }
    }
    state.t = target;
    out.push_back(state);
  }
  return out;
}

}  // namespace scpulse

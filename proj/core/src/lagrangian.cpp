#include "scpulse/lagrangian.hpp"

#include <algorithm>
#include <cfloat>
#include <cmath>
#include <memory>

#include "scpulse/errors.hpp"

namespace scpulse {

InitialData sample_profile(const Profile& profile, std::size_t m) {
  InitialData id;
  id.u0 = GridFn::sample(m, [&](double x) { return profile.value(x); });
  id.u0x = GridFn::sample(m, [&](double x) { return profile.slope(x); });
  id.profile_spec = profile.spec().describe();
  id.u_at = [profile](double x) { return profile.value(x); };
  id.ux_at = [profile](double x) { return profile.slope(x); };
  return id;
}

InitialData sample_data(GridFn u0) {
  InitialData id;
  id.u0x = diff(u0, Derivative::spectral);
  auto series = std::make_shared<const FourierInterpolant>(u0);
  id.u0 = std::move(u0);
  id.profile_spec = "samples";
  id.u_at = [series](double x) { return (*series)(x); };
  id.ux_at = [series](double x) { return series->derivative(x); };
  return id;
}

InitialData make_initial_data(const Profile& profile, std::size_t m) {
  InitialData id = sample_profile(profile, m);
  compute_h(id);
  check_theorem_condition(id);
  return id;
}

double compute_h(InitialData& id) {
  id.h = quad_period(id.u0x * id.u0x);
  require_h_admissible(id.h);
  return id.h;
}

double check_theorem_condition(InitialData& id) {
  id.F0 = quad_period(id.u0 - id.u0 * id.u0x * id.u0x);
  id.theorem_scope = std::abs(id.F0) <= 1e-10 * (1.0 + id.u0.max_abs());
  return id.F0;
}

GridFn y_slope(const LagrangianState& s) { return s.yxi ? *s.yxi : s.V * s.Q; }

GridFn U_slope(const LagrangianState& s) { return s.Uxi ? *s.Uxi : s.W * s.Q; }

LagrangianState build_initial_lagrangian(const InitialData& id, std::size_t n, bool augmented) {
  require_h_admissible(id.h);
  const double h = id.h;
  const double winding = 1.0 + h;

  // mu0(x) = x + int_0^x u0x^2 = (1+h) x + int_0^x P(u0x^2); the periodic part
  // is evaluated from the trigonometric interpolant so mu0 is accurate off-grid.
  const GridFn energy_density = id.u0x * id.u0x;
  const FourierInterpolant density(energy_density);
  const GridFn anti = inv_deriv(energy_density);
  GridFn mu_nodes(anti.size());
  for (std::size_t i = 0; i < anti.size(); ++i) {
    mu_nodes[i] = winding * anti.node(i) + anti[i];
  }
  const MonotoneMap mu(mu_nodes, winding);
  const GridFn mu_slope = 1.0 + energy_density;

  auto mu_at = [&](double x) { return winding * x + density.antiderivative(x); };
  auto mu_prime = [&](double x) {
    const double ux = id.ux_at(x);
    return 1.0 + ux * ux;
  };

  std::vector<double> y0(n);
  for (std::size_t j = 1; j < n; ++j) {
    const double target = winding * static_cast<double>(j) / static_cast<double>(n);
    double x = invert_monotone(mu, mu_slope, target);
    // Newton polish against the continuous map; mu0' >= 1 so this is safe.
    for (int it = 0; it < 8; ++it) {
      const double r = mu_at(x) - target;
      const double step = r / mu_prime(x);
      x -= step;
      if (std::abs(step) <= 4.0 * DBL_EPSILON * std::max(1.0, std::abs(x))) break;
    }
    y0[j] = x;
  }
  y0[0] = 0.0;

  LagrangianState s;
  s.t = 0.0;
  s.h = h;
  s.U = GridFn(n);
  s.V = GridFn(n);
  s.W = GridFn(n);
  s.Q = GridFn(n, winding);
  for (std::size_t j = 0; j < n; ++j) {
    const double ux = id.ux_at(y0[j]);
    const double denom = 1.0 + ux * ux;
    s.U[j] = id.u_at(y0[j]);
    s.V[j] = 1.0 / denom;
    s.W[j] = ux / denom;
  }
  s.y = MonotoneMap(std::move(y0), 1.0);
  if (augmented) {
    s.yxi = s.V * s.Q;
    s.Uxi = s.W * s.Q;
  }
  return s;
}

NonlocalTerms nonlocal_terms(const LagrangianState& s) {
  const std::size_t n = s.size();
  const GridFn uq = s.U * s.Q;
  const GridFn density = 2.0 * uq * s.V - uq;

  NonlocalTerms out;
  out.P1 = quad_period(density);
  const double root = invert_monotone(s.y, 0.0);
  out.xi0 = root - std::floor(root);

  const GridFn anti = inv_deriv(density);
  const double anti_at_root = FourierInterpolant(anti)(out.xi0);
  out.K = GridFn(n);
  for (std::size_t j = 0; j < n; ++j) {
    out.K[j] = anti[j] - anti_at_root + out.P1 * (anti.node(j) - out.xi0);
  }
  return out;
}

StateDerivative rhs(const LagrangianState& s) {
  require_h_admissible(s.h);
  const std::size_t n = s.size();
  NonlocalTerms nl = nonlocal_terms(s);
  const double p1 = nl.P1;

  // K - P1 y is periodic in xi: K jumps by P1 and y by 1 per period.
  GridFn source(n);
  for (std::size_t j = 0; j < n; ++j) source[j] = nl.K[j] - p1 * s.y[j];
  const GridFn weight = 2.0 * s.Q * s.V - s.Q;
  const double f = quad_period(weight * source) / (1.0 - s.h);

  StateDerivative d;
  d.dy = -(s.U * s.U);
  d.dU = source - f;
  d.dV = GridFn(n);
  d.dW = GridFn(n);
  d.dQ = GridFn(n);
  for (std::size_t j = 0; j < n; ++j) {
    const double u = s.U[j];
    const double v = s.V[j];
    const double w = s.W[j];
    const double q = s.Q[j];
    d.dV[j] = -2.0 * u * w + 2.0 * w * v * p1;
    d.dW[j] = 2.0 * u * v - u - 2.0 * v * v * p1 + v * p1;
    d.dQ[j] = -2.0 * w * q * p1;
  }
  if (s.augmented()) {
    d.dyxi = -2.0 * s.U * *s.Uxi;
    d.dUxi = s.U * weight - p1 * *s.yxi;
  }
  d.P1 = p1;
  d.K = std::move(nl.K);
  d.xi0 = nl.xi0;
  d.f = f;
  return d;
}

Conserved conserved(const LagrangianState& s) {
  const GridFn uq = s.U * s.Q;
  return {quad_period(s.Q - s.Q * s.V), quad_period(2.0 * uq * s.V - uq)};
}

double InvariantRecord::identity_max() const noexcept { return std::max({wv, yxi, uxi}); }

InvariantRecord invariant_residuals(const LagrangianState& s, Derivative method) {
  const std::size_t n = s.size();
  GridFn yx;
  GridFn ux;
  if (s.augmented()) {
    yx = *s.yxi;
    ux = *s.Uxi;
  } else {
    yx = diff(s.y.periodic_part(), method) + s.y.winding();
    ux = diff(s.U, method);
  }
  InvariantRecord r;
  r.min_v = s.V.min();
  r.max_v = s.V.max();
  r.min_q = s.Q.min();
  double wmax = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    const double v = s.V[j];
    const double w = s.W[j];
    const double q = s.Q[j];
    r.wv = std::max(r.wv, std::abs(w * w + v * v - v));
    r.yxi = std::max(r.yxi, std::abs(yx[j] - v * q));
    r.uxi = std::max(r.uxi, std::abs(ux[j] - w * q));
    wmax = std::max(wmax, std::abs(w));
  }
  r.w_excess = std::max(0.0, wmax - 0.5);
  r.winding_defect = std::abs(s.y.winding() - 1.0);
  return r;
}

}  // namespace scpulse

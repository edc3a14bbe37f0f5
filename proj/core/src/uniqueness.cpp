#include "scpulse/uniqueness.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "scpulse/errors.hpp"

namespace scpulse {
namespace {

std::vector<double> cumulative_trapezoid(std::span<const double> t, std::span<const double> v) {
  std::vector<double> out(t.size(), 0.0);
  for (std::size_t k = 1; k < t.size(); ++k) {
    out[k] = out[k - 1] + 0.5 * (t[k] - t[k - 1]) * (v[k] + v[k - 1]);
  }
  return out;
}

}  // namespace

double SourceTerms::position(std::size_t k, double beta) const {
  return invert_monotone(mu[k], mu_slope[k], (1.0 + h) * beta);
}

double SourceTerms::u_at(std::size_t k, double y) const { return hermite_interp(u[k], ux[k], y); }

double SourceTerms::G(std::size_t k, double beta) const {
  if (P1[k] == 0.0) return 0.0;
  return -2.0 * P1[k] * (u_at(k, position(k, beta)) - u[k][0]);
}

SourceTerms accumulate_sources(std::span<const EulerianField> etraj, double h) {
  SourceTerms st;
  st.h = h;
  std::vector<double> flux;
  for (const EulerianField& e : etraj) {
    const GridFn ux2 = e.ux * e.ux;
    const double energy = quad_period(ux2);
    const double winding = 1.0 + energy;
    const GridFn anti = inv_deriv(ux2);
    GridFn nodes(anti.size());
    for (std::size_t i = 0; i < anti.size(); ++i) nodes[i] = winding * anti.node(i) + anti[i];

    const double u0 = e.u[0];
    st.times.push_back(e.t);
    st.u0sq.push_back(u0 * u0);
    flux.push_back(u0 * u0 * ux2[0]);
    st.P1.push_back(e.P1);
    st.mu.emplace_back(nodes, winding);
    st.mu_slope.push_back(1.0 + ux2);
    st.u.push_back(e.u);
    st.ux.push_back(e.ux);
  }
  st.A = cumulative_trapezoid(st.times, flux);
  st.int_u0sq = cumulative_trapezoid(st.times, st.u0sq);
  return st;
}

CharTrace trace_beta(const SourceTerms& st, double xi, double tol) {
  if (!(tol > 0.0)) throw std::invalid_argument("tol must be > 0");
  const std::size_t nt = st.size();
  CharTrace tr;
  tr.xi = xi;
  tr.times = st.times;
  std::vector<double> beta(nt, xi);
  const double scale = 1.0 / (1.0 + st.h);

  double prev_diff = 0.0;
  double ratio = 0.0;
  bool converged = nt <= 1;
  int it = 0;
  std::vector<double> g(nt);
  while (!converged) {
    if (it == kMaxPicardIterations) {
      throw NoContraction("Picard iteration for xi = " + std::to_string(xi) +
                          " did not reach tolerance in 50 iterations");
    }
    ++it;
    for (std::size_t k = 0; k < nt; ++k) g[k] = st.G(k, beta[k]);
    const std::vector<double> ig = cumulative_trapezoid(st.times, g);
    double diff = 0.0;
    for (std::size_t k = 0; k < nt; ++k) {
      const double next = xi + scale * (ig[k] - st.int_u0sq[k] - st.A[k]);
      diff = std::max(diff, std::abs(next - beta[k]));
      beta[k] = next;
    }
    if (it > 1) ratio = prev_diff > 0.0 ? diff / prev_diff : 0.0;
    prev_diff = diff;
    converged = diff <= tol;
  }
  if (!(ratio < 1.0)) {
    std::ostringstream os;
    os << "contraction ratio " << ratio << " for xi = " << xi;
    throw NoContraction(os.str());
  }
  tr.picard_iters = it;
  tr.contraction_ratio = ratio;
  tr.beta = std::move(beta);
  tr.beta.front() = xi;
  tr.ychar.resize(nt);
  for (std::size_t k = 0; k < nt; ++k) tr.ychar[k] = st.position(k, tr.beta[k]);
  return tr;
}

CharacteristicCheck verify_characteristic(const CharTrace& trace, const Trajectory& traj,
                                          std::span<const EulerianField> etraj) {
  const std::size_t nt = trace.times.size();
  if (traj.states.size() != nt || etraj.size() != nt) {
    throw std::invalid_argument("trace, trajectory and fields are not time-aligned");
  }
  CharacteristicCheck c;
  c.ode_residuals.assign(nt, 0.0);
  std::vector<double> uc(nt), hc(nt);
  for (std::size_t k = 0; k < nt; ++k) {
    const EulerianField& e = etraj[k];
    const double y = trace.ychar[k];
    uc[k] = hermite_interp(e.u, e.ux, y);
    hc[k] = interp(e.H, y);
    const LagrangianState& s = traj.states[k];
    const double ylag = eval_monotone(s.y, y_slope(s), trace.xi);
    c.lagrangian_mismatch = std::max(c.lagrangian_mismatch, std::abs(y - ylag));
  }
  for (std::size_t k = 0; k + 1 < nt; ++k) {
    const double dt = trace.times[k + 1] - trace.times[k];
    const double speed = 0.5 * (uc[k] * uc[k] + uc[k + 1] * uc[k + 1]);
    const double r = (trace.ychar[k + 1] - trace.ychar[k]) / dt + speed;
    c.ode_residuals[k + 1] = std::abs(r);
    c.ode_residual = std::max(c.ode_residual, std::abs(r));
  }
  const std::vector<double> ih = cumulative_trapezoid(trace.times, hc);
  for (std::size_t k = 0; k < nt; ++k) {
    c.slope_residual = std::max(c.slope_residual, std::abs(uc[k] - uc[0] - ih[k]));
  }
  return c;
}

LipschitzReport lipschitz_check(const SourceTerms& st, std::size_t m) {
  LipschitzReport r;
  const double ly = 1.0 + st.h;
  const double lu = 0.5 * (1.0 + st.h);
  const double db = 1.0 / static_cast<double>(m);
  for (std::size_t k = 0; k < st.size(); ++k) {
    double y_prev = st.position(k, 0.0);
    double u_prev = st.u_at(k, y_prev);
    for (std::size_t i = 1; i <= m; ++i) {
      const double y = st.position(k, static_cast<double>(i) * db);
      const double u = st.u_at(k, y);
      r.y_ratio = std::max(r.y_ratio, std::abs(y - y_prev) / (ly * db));
      r.u_ratio = std::max(r.u_ratio, std::abs(u - u_prev) / (lu * db));
      y_prev = y;
      u_prev = u;
    }
  }
  return r;
}

bool non_crossing(std::span<const CharTrace> traces) {
  for (std::size_t i = 1; i < traces.size(); ++i) {
    const auto& a = traces[i - 1];
    const auto& b = traces[i];
    for (std::size_t k = 0; k < std::min(a.ychar.size(), b.ychar.size()); ++k) {
      if (b.ychar[k] < a.ychar[k]) return false;
    }
  }
  return true;
}

}  // namespace scpulse

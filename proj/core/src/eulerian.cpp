#include "scpulse/eulerian.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "scpulse/errors.hpp"

namespace scpulse {
namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

struct Bump {
  double center;
  double half_width;

  double value(double t) const {
    const double s = (t - center) / half_width;
    if (std::abs(s) >= 1.0) return 0.0;
    return std::exp(-s * s / (1.0 - s * s));
  }
  double derivative(double t) const {
    const double s = (t - center) / half_width;
    if (std::abs(s) >= 1.0) return 0.0;
    const double one_minus = 1.0 - s * s;
    return value(t) * (-2.0 * s / (one_minus * one_minus)) / half_width;
  }
};

double trapezoid(std::span<const double> t, std::span<const double> v) {
  double sum = 0.0;
  for (std::size_t k = 0; k + 1 < t.size(); ++k) sum += 0.5 * (t[k + 1] - t[k]) * (v[k] + v[k + 1]);
  return sum;
}

}  // namespace

std::size_t EulerianField::invalid_count() const noexcept {
  return static_cast<std::size_t>(std::count(ux_valid.begin(), ux_valid.end(), 0));
}

EulerianField reconstruct(const LagrangianState& s, std::size_t m) {
  const GridFn ys = y_slope(s);
  const GridFn us = U_slope(s);
  EulerianField e;
  e.t = s.t;
  e.h = s.h;
  e.P1 = conserved(s).Ftilde;
  e.u = GridFn(m);
  e.ux = GridFn(m);
  e.ux_valid.assign(m, 1);
  for (std::size_t i = 0; i < m; ++i) {
    const double x = e.u.node(i);
    const double xi = invert_monotone(s.y, ys, x);
    e.u[i] = hermite_interp(s.U, us, xi);
    const double v = interp(s.V, xi);
    if (v >= kVFloor) {
      e.ux[i] = interp(s.W, xi) / v;
    } else {
      e.ux_valid[i] = 0;
    }
  }
  const double dm = static_cast<double>(m);
  for (std::size_t i = 0; i < m; ++i) {
    if (!e.ux_valid[i]) e.ux[i] = (e.u.wrapped(static_cast<long>(i) + 1) - e.u[i]) * dm;
  }
  FAndH fh = compute_f_and_H(e.u, e.ux, s.h);
  e.f_t = fh.f;
  e.H = std::move(fh.H);
  return e;
}

std::vector<EulerianField> reconstruct_all(const Trajectory& traj, std::size_t m) {
  std::vector<EulerianField> out;
  out.reserve(traj.states.size());
  for (const auto& s : traj.states) out.push_back(reconstruct(s, m));
  return out;
}

EulerianInvariants eulerian_invariants(const EulerianField& e) {
  const std::size_t m = e.size();
  const std::size_t bad = e.invalid_count();
  if (100 * bad > m) {
    std::ostringstream os;
    os << bad << " of " << m << " nodes have V below the floor at t = " << e.t;
    throw MaskTooLarge(os.str());
  }
  double sum_e = 0.0;
  double sum_f = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    if (!e.ux_valid[i]) continue;
    const double u = e.u[i];
    const double ux2 = e.ux[i] * e.ux[i];
    sum_e += ux2;
    sum_f += u - u * ux2;
  }
  const double count = static_cast<double>(m - bad);
  return {sum_e / count, sum_f / count};
}

FAndH compute_f_and_H(const GridFn& u, const GridFn& ux, double h) {
  require_h_admissible(h);
  const GridFn ux2 = ux * ux;
  const GridFn g = inv_deriv(u - u * ux2);
  FAndH out;
  out.f = quad_period((1.0 - ux2) * g) / (1.0 - h);
  out.H = g - out.f;
  return out;
}

FAndH compute_f_and_H(const EulerianField& e, double h) { return compute_f_and_H(e.u, e.ux, h); }

std::vector<TestFunction> test_basket(double t_end) {
  const std::vector<Bump> bumps = {
      {0.5 * t_end, 0.45 * t_end},
      {0.35 * t_end, 0.25 * t_end},
      {0.65 * t_end, 0.25 * t_end},
  };
  std::vector<TestFunction> out;
  for (std::size_t j = 0; j < bumps.size(); ++j) {
    const Bump b = bumps[j];
    for (int k = 0; k <= 3; ++k) {
      const double w = kTwoPi * k;
      for (int kind = 0; kind < 2; ++kind) {
        const bool is_sin = kind == 1;
        if (is_sin && k == 0) continue;
        TestFunction tf;
        tf.name = std::string(is_sin ? "sin" : "cos") + std::to_string(k) + "_bump" + std::to_string(j);
        auto space = [=](double x) { return is_sin ? std::sin(w * x) : std::cos(w * x); };
        auto space_x = [=](double x) { return is_sin ? w * std::cos(w * x) : -w * std::sin(w * x); };
        tf.value = [=](double t, double x) { return b.value(t) * space(x); };
        tf.dt = [=](double t, double x) { return b.derivative(t) * space(x); };
        tf.dx = [=](double t, double x) { return b.value(t) * space_x(x); };
        tf.dtx = [=](double t, double x) { return b.derivative(t) * space_x(x); };
        out.push_back(std::move(tf));
      }
    }
  }
  return out;
}

double WeakResidualReport::max_r1() const {
  double m = 0.0;
  for (const auto& e : entries) m = std::max(m, e.r1);
  return m;
}

double WeakResidualReport::max_r2() const {
  double m = 0.0;
  for (const auto& e : entries) m = std::max(m, e.r2);
  return m;
}

double WeakResidualReport::max_r3() const {
  double m = 0.0;
  for (const auto& e : entries) m = std::max(m, e.r3);
  return m;
}

double WeakResidualReport::max_all() const { return std::max({max_r1(), max_r2(), max_r3()}); }

WeakResidualReport weak_residual(std::span<const EulerianField> fields,
                                 std::span<const TestFunction> basket) {
  WeakResidualReport report;
  if (fields.empty()) return report;
  const std::size_t m = fields.front().size();
  const std::size_t nt = fields.size();
  report.grid_size = m;
  report.time_samples = nt;

  std::vector<double> times(nt);
  std::vector<double> means(nt);
  for (std::size_t k = 0; k < nt; ++k) {
    times[k] = fields[k].t;
    const GridFn& u = fields[k].u;
    const GridFn& ux = fields[k].ux;
    means[k] = quad_period(u - u * ux * ux);
  }

  const double inv_m = 1.0 / static_cast<double>(m);
  for (const TestFunction& psi : basket) {
    std::vector<double> lhs1(nt), rhs1(nt), lhs2(nt), rhs2(nt), lhs3(nt), rhs3(nt);
    for (std::size_t k = 0; k < nt; ++k) {
      const EulerianField& e = fields[k];
      const double t = e.t;
      double a1 = 0, b1 = 0, a2 = 0, b2 = 0, a3 = 0, b3 = 0;
      for (std::size_t i = 0; i < m; ++i) {
        const double x = e.u.node(i);
        const double u = e.u[i];
        const double ux = e.ux[i];
        const double p = psi.value(t, x);
        const double pt = psi.dt(t, x);
        const double px = psi.dx(t, x);
        const double ptx = psi.dtx(t, x);
        a1 += u * ptx + u * u * ux * px;
        b1 += (u - u * ux * ux - means[k]) * p;
        a2 += u * pt - u * u * u * px / 3.0;
        b2 += -e.H[i] * p;
        a3 += ux * ux * pt - u * u * ux * ux * px;
        b3 += -(2.0 * u * ux - 2.0 * ux * e.P1) * p;
      }
      lhs1[k] = a1 * inv_m;
      rhs1[k] = b1 * inv_m;
      lhs2[k] = a2 * inv_m;
      rhs2[k] = b2 * inv_m;
      lhs3[k] = a3 * inv_m;
      rhs3[k] = b3 * inv_m;
    }

    const EulerianField& e0 = fields.front();
    double init1 = 0, init2 = 0, init3 = 0;
    for (std::size_t i = 0; i < m; ++i) {
      const double p0 = psi.value(e0.t, e0.u.node(i));
      init1 += e0.ux[i] * p0;
      init2 += e0.u[i] * p0;
      init3 += e0.ux[i] * e0.ux[i] * p0;
    }
    init1 *= inv_m;
    init2 *= inv_m;
    init3 *= inv_m;

    WeakResidual r;
    r.name = psi.name;
    r.r1 = std::abs(trapezoid(times, lhs1) - trapezoid(times, rhs1) - init1);
    r.r2 = std::abs(trapezoid(times, lhs2) - trapezoid(times, rhs2) + init2);
    r.r3 = std::abs(trapezoid(times, lhs3) - trapezoid(times, rhs3) + init3);
    report.entries.push_back(std::move(r));
  }
  return report;
}

WeakResidualReport weak_residual(const Trajectory& traj, std::span<const TestFunction> basket) {
  if (traj.states.empty()) return {};
  const auto fields = reconstruct_all(traj, traj.states.front().size());
  return weak_residual(fields, basket);
}

}  // namespace scpulse

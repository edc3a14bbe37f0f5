#include <doctest.h>

#include <cmath>
#include <numbers>

#include "scpulse/errors.hpp"
#include "scpulse/lagrangian.hpp"
#include "scpulse/reference.hpp"

using namespace scpulse;

namespace {

constexpr double kPi = std::numbers::pi;

GridFn sine(std::size_t n, double a) {
  return GridFn::sample(n, [a](double x) { return a * std::sin(2 * kPi * x); });
}

double energy(const GridFn& u) {
  const GridFn ux = diff(u);
  return quad_period(ux * ux);
}

double momentum(const GridFn& u) {
  const GridFn ux = diff(u);
  return quad_period(u - u * ux * ux);
}

}  // namespace

TEST_CASE("stationary profiles") {
  CHECK(ref_rhs(RefState{0.0, GridFn(64), 0.0}).max_abs() == 0.0);
  CHECK(ref_rhs(RefState{0.0, GridFn(64, 0.5), 0.0}).max_abs() <= 1e-12);
  CHECK_THROWS_AS(ref_rhs(RefState{0.0, GridFn(64), 1.0}), HNearOne);
}

TEST_CASE("the nonlocal constant keeps int(u - u u_x^2) fixed") {
  // d/dt int(u - u u_x^2) = int u_t (1 - u_x^2) - 2 int u u_x (u_t)_x with the same stencil
  const GridFn u = sine(256, 0.1);
  const GridFn ux = diff(u);
  const RefState r{0.0, u, quad_period(ux * ux)};
  const GridFn ut = ref_rhs(r);
  const double rate = quad_period(ut - ut * ux * ux - 2.0 * u * ux * diff(ut));
  CHECK(std::abs(rate) <= 1e-8);
}

TEST_CASE("f matches the Lagrangian pipeline and the closed form at t = 0") {
  const double a = 0.1;
  const std::size_t n = 256;
  const InitialData id = make_initial_data(Profile(ProfileSpec::sine(a)), n);
  const double f_exact = (a - kPi * kPi * a * a * a) / (2 * kPi) - kPi * a * a * a / 6;
  const double f_lagrangian = rhs(build_initial_lagrangian(id, n)).f;
  const double f_reference = ref_rhs_full(RefState{0.0, id.u0, id.h}, Derivative::spectral).f;
  CHECK(std::abs(f_lagrangian - f_reference) <= 1e-10);
  CHECK(f_reference == doctest::Approx(f_exact).epsilon(1e-13));
  // the fourth-order stencil differs only by its truncation error
  CHECK(ref_rhs_full(RefState{0.0, id.u0, id.h}).f == doctest::Approx(f_exact).epsilon(1e-6));
}

TEST_CASE("zero data gives the zero trajectory") {
  RunConfig cfg;
  cfg.n = 32;
  cfg.dt = 0.01;
  cfg.t_end = 0.1;
  cfg.output_times = {0.05};
  const auto states = ref_integrate(GridFn(32), cfg);
  REQUIRE(states.size() == 3);
  CHECK(states[1].t == 0.05);
  CHECK(states[2].t == 0.1);
  for (const RefState& s : states) CHECK(s.u.max_abs() == 0.0);
}

TEST_CASE("smooth run conserves both functionals") {
  const GridFn u0 = sine(256, 0.05);
  RunConfig cfg;
  cfg.n = 256;
  cfg.dt = 2.5e-4;
  cfg.t_end = 0.5;
  cfg.output_times = RunConfig::uniform_times(0.5, 11);
  const auto states = ref_integrate(u0, cfg);
  REQUIRE(states.size() == 11);
  const double e0 = energy(u0);
  const double m0 = momentum(u0);
  for (const RefState& s : states) {
    CHECK(std::abs(energy(s.u) - e0) / e0 <= 1e-6);
    CHECK(std::abs(momentum(s.u) - m0) <= 1e-6);
    CHECK(s.h == e0);
  }
}

TEST_CASE("steep data trips the smoothness guard") {
  // a = 0.5 steepens towards a gradient catastrophe near t = 1.2; at N = 8192 the
  // discrete slope passes 10 max|u0x| = 10 pi before then.
  RunConfig cfg;
  cfg.n = 8192;
  cfg.dt = 5e-4;
  cfg.t_end = 1.5;
  CHECK_THROWS_AS(ref_integrate(sine(8192, 0.5), cfg), SmoothnessLost);
}

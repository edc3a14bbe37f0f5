#include <doctest.h>

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "scpulse/errors.hpp"
#include "scpulse/uniqueness.hpp"

using namespace scpulse;

namespace {

constexpr double kPi = std::numbers::pi;

struct Run {
  InitialData id;
  Trajectory traj;
  std::vector<EulerianField> fields;
  SourceTerms st;
};

Run run(InitialData id, std::size_t n, double dt, double t_end, std::size_t snapshots) {
  Run r;
  r.id = std::move(id);
  RunConfig cfg;
  cfg.n = n;
  cfg.dt = dt;
  cfg.t_end = t_end;
  cfg.output_times = RunConfig::uniform_times(t_end, snapshots);
  r.traj = integrate(build_initial_lagrangian(r.id, n), cfg);
  r.fields = reconstruct_all(r.traj, n);
  r.st = accumulate_sources(r.fields, r.id.h);
  return r;
}

Run run_profile(const ProfileSpec& spec, std::size_t n, double dt, double t_end, std::size_t snapshots) {
  return run(make_initial_data(Profile(spec), n), n, dt, t_end, snapshots);
}

}  // namespace

TEST_CASE("zero solution: every source vanishes and labels stay put") {
  const Run r = run_profile(ProfileSpec::zero(), 32, 0.01, 0.2, 21);
  for (std::size_t k = 0; k < r.st.size(); ++k) {
    CHECK(r.st.A[k] == 0.0);
    CHECK(r.st.u0sq[k] == 0.0);
    CHECK(r.st.G(k, 0.37) == 0.0);
  }
  const CharTrace tr = trace_beta(r.st, 0.25, 1e-12);
  for (std::size_t k = 0; k < tr.times.size(); ++k) {
    CHECK(tr.beta[k] == 0.25);
    CHECK(tr.ychar[k] == doctest::Approx(0.25).epsilon(1e-15));
  }
  const CharacteristicCheck c = verify_characteristic(tr, r.traj, r.fields);
  CHECK(c.ode_residual == 0.0);
  CHECK(c.lagrangian_mismatch <= 1e-15);
  CHECK(c.slope_residual == 0.0);
}

TEST_CASE("sources for a sine start at zero with zero slope") {
  const Run r = run_profile(ProfileSpec::sine(0.1), 128, 1e-3, 0.2, 21);
  CHECK(r.st.A[0] == 0.0);
  CHECK(r.st.u0sq[0] == 0.0);
  CHECK(r.st.int_u0sq[0] == 0.0);
  for (std::size_t k = 1; k < r.st.size(); ++k) {
    CHECK(r.st.A[k] >= r.st.A[k - 1]);
    CHECK(std::isfinite(r.st.A[k]));
  }
  // A and int u^2(s,0) grow at least quadratically from zero initial slope
  CHECK(r.st.A[1] <= 1e-3 * r.st.times[1]);
  // theorem scope: P1 = 0 up to roundoff, hence G = 0
  for (std::size_t k = 0; k < r.st.size(); ++k) CHECK(std::abs(r.st.G(k, 0.3)) <= 1e-15);
}

TEST_CASE("t_end = 0 gives the initial characteristic") {
  // the Eulerian map mu and the Lagrangian nodes y are separate discretizations of the
  // same map, so they agree up to a truncation error that shrinks with N
  auto gap = [](std::size_t n) {
    const Run r = run_profile(ProfileSpec::sine(0.1), n, 1e-3, 0.0, 2);
    const CharTrace tr = trace_beta(r.st, 0.3, 1e-12);
    REQUIRE(tr.beta.size() == 1);
    CHECK(tr.beta[0] == 0.3);
    CHECK(tr.picard_iters == 0);
    const LagrangianState& s0 = r.traj.states[0];
    return std::abs(tr.ychar[0] - eval_monotone(s0.y, y_slope(s0), 0.3));
  };
  // the error is not monotone between neighbouring N, so compare three doublings apart
  const double coarse = gap(64);
  const double fine = gap(512);
  CHECK(coarse <= 1e-5);
  CHECK(fine <= 1e-8);
  CHECK(std::log2(coarse / fine) / 3.0 >= 2.0);
}

TEST_CASE("theorem-scope labels follow the closed form, uniformly in xi") {
  const Run r = run_profile(ProfileSpec::sine(0.1), 256, 5e-4, 1.0, 201);
  const double scale = 1.0 / (1.0 + r.id.h);
  std::vector<double> shift;
  for (double xi : {0.0, 0.2, 0.55, 0.9}) {
    const CharTrace tr = trace_beta(r.st, xi, 1e-13);
    CHECK(tr.contraction_ratio < 0.5);
    for (std::size_t k = 0; k < tr.times.size(); ++k) {
      const double closed = xi - scale * (r.st.int_u0sq[k] + r.st.A[k]);
      CHECK(std::abs(tr.beta[k] - closed) <= 1e-13);
    }
    if (shift.empty()) {
      for (std::size_t k = 0; k < tr.times.size(); ++k) shift.push_back(tr.beta[k] - xi);
    } else {
      for (std::size_t k = 0; k < tr.times.size(); ++k) CHECK(tr.beta[k] - xi == doctest::Approx(shift[k]).epsilon(1e-12));
    }
  }
}

TEST_CASE("traced characteristics reproduce the Lagrangian flow map") {
  auto worst = [](std::size_t n, double dt) {
    const Run r = run_profile(ProfileSpec::sine(0.1), n, dt, 1.0, static_cast<std::size_t>(1.0 / (10 * dt)) + 1);
    double m = 0.0;
    std::vector<CharTrace> traces;
    for (int i = 0; i < 16; ++i) {
      CharTrace tr = trace_beta(r.st, i / 16.0, 1e-12);
      const CharacteristicCheck c = verify_characteristic(tr, r.traj, r.fields);
      m = std::max(m, c.lagrangian_mismatch);
      CHECK(c.ode_residual <= 1e-5);
      CHECK(c.slope_residual <= 1e-5);
      traces.push_back(std::move(tr));
    }
    CHECK(non_crossing(traces));
    const LipschitzReport lip = lipschitz_check(r.st, n);
    CHECK(lip.max_ratio() <= 1.01);
    return m;
  };
  const double coarse = worst(128, 1e-3);
  const double fine = worst(256, 5e-4);
  CHECK(coarse <= 5e-4);
  CHECK(std::log2(coarse / fine) >= 1.0);
}

TEST_CASE("constant solution moves rigidly") {
  const double c = 0.3;
  const Run r = run_profile(ProfileSpec::constant_value(c), 64, 1e-2, 0.5, 11);
  CHECK(r.id.h == 0.0);
  const CharTrace tr = trace_beta(r.st, 0.4, 1e-12);
  for (std::size_t k = 0; k < tr.times.size(); ++k) {
    CHECK(tr.ychar[k] == doctest::Approx(0.4 - c * c * tr.times[k]).epsilon(1e-12));
  }
  CHECK(verify_characteristic(tr, r.traj, r.fields).ode_residual <= 1e-10);
}

TEST_CASE("data outside theorem scope: Picard iteration with G") {
  const std::size_t n = 128;
  InitialData id = sample_data(GridFn::sample(n, [](double x) { return 0.1 + 0.1 * std::sin(2 * kPi * x); }));
  compute_h(id);
  check_theorem_condition(id);
  REQUIRE_FALSE(id.theorem_scope);
  const Run r = run(std::move(id), n, 1e-3, 0.5, 51);
  const CharTrace tr = trace_beta(r.st, 0.3, 1e-12);
  CHECK(tr.picard_iters > 2);
  CHECK(tr.contraction_ratio > 0.0);
  CHECK(tr.contraction_ratio < 0.5);
  CHECK(verify_characteristic(tr, r.traj, r.fields).lagrangian_mismatch <= 5e-4);
}

TEST_CASE("a strongly coupled source does not contract") {
  const std::size_t n = 32;
  SourceTerms st;
  st.h = 0.0;
  for (int k = 0; k <= 10; ++k) {
    st.times.push_back(0.1 * k);
    st.A.push_back(0.0);
    st.u0sq.push_back(0.0);
    st.int_u0sq.push_back(0.0);
    st.P1.push_back(500.0);
    st.mu.emplace_back(GridFn::sample(n, [](double x) { return x; }), 1.0);
    st.mu_slope.push_back(GridFn(n, 1.0));
    st.u.push_back(GridFn::sample(n, [](double x) { return std::sin(2 * kPi * x); }));
    st.ux.push_back(GridFn::sample(n, [](double x) { return 2 * kPi * std::cos(2 * kPi * x); }));
  }
  CHECK_THROWS_AS(trace_beta(st, 0.1, 1e-12), NoContraction);
  CHECK_THROWS_AS(trace_beta(st, 0.1, 0.0), std::invalid_argument);
}

TEST_CASE("crossing traces are detected") {
  CharTrace a;
  a.ychar = {0.1, 0.2, 0.3};
  CharTrace b;
  b.ychar = {0.2, 0.25, 0.29};
  const std::vector<CharTrace> crossing{a, b};
  CHECK_FALSE(non_crossing(crossing));
  b.ychar = {0.2, 0.25, 0.31};
  const std::vector<CharTrace> ordered{a, b};
  CHECK(non_crossing(ordered));
}

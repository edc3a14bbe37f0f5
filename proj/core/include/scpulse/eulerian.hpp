#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "scpulse/grid.hpp"
#include "scpulse/integrator.hpp"
#include "scpulse/lagrangian.hpp"

namespace scpulse {

/// Below this value of V the slope W/V is not trusted.
inline constexpr double kVFloor = 1e-10;

/// The weak solution u(t, .) on the uniform x-grid, rebuilt from a
/// Lagrangian state, together with the nonlocal terms f(t) and H(t, .).
struct EulerianField {
  double t = 0.0;
  double h = 0.0;
  double P1 = 0.0;  // F-tilde of the source state
  GridFn u;
  GridFn ux;
  std::vector<std::uint8_t> ux_valid;
  double f_t = 0.0;
  GridFn H;

  std::size_t size() const noexcept { return u.size(); }
  std::size_t invalid_count() const noexcept;
};

/// u(x) = U(xi) where y(xi) = x; u_x = W/V where V >= kVFloor, otherwise a
/// forward difference of u with the validity flag cleared.
///
/// The inversion of y and the evaluation of U use cubic Hermite segments with
/// the node slopes y_xi = VQ and U_xi = WQ carried by the state.
EulerianField reconstruct(const LagrangianState& s, std::size_t m);

std::vector<EulerianField> reconstruct_all(const Trajectory& traj, std::size_t m);

struct EulerianInvariants {
  double E = 0.0;  // int u_x^2
  double F = 0.0;  // int (u - u u_x^2)
};

/// Throws MaskTooLarge when more than 1% of the nodes are invalid; invalid
/// nodes are dropped and the mean is taken over the rest.
EulerianInvariants eulerian_invariants(const EulerianField& e);

struct FAndH {
  double f = 0.0;
  GridFn H;
};

/// f = (1/(1-h)) int (1 - u_x^2) g with g = d_x^{-1}(u - u u_x^2), H = g - f.
FAndH compute_f_and_H(const GridFn& u, const GridFn& ux, double h);
FAndH compute_f_and_H(const EulerianField& e, double h);

/// Smooth space-time test function with the partial derivatives the weak
/// identities need.
struct TestFunction {
  std::string name;
  std::function<double(double, double)> value;  // psi(t, x)
  std::function<double(double, double)> dt;
  std::function<double(double, double)> dx;
  std::function<double(double, double)> dtx;
};

/// {cos(2 pi k x), sin(2 pi k x)} x {three C-infinity bumps compactly
/// supported inside (0, t_end)}; k = 0..3 for cosines and 1..3 for sines.
std::vector<TestFunction> test_basket(double t_end);

struct WeakResidual {
  std::string name;
  double r1 = 0.0;  // momentum identity, differentiated form
  double r2 = 0.0;  // momentum identity, integrated form
  double r3 = 0.0;  // energy balance
};

struct WeakResidualReport {
  std::vector<WeakResidual> entries;
  std::size_t grid_size = 0;
  std::size_t time_samples = 0;

  double max_r1() const;
  double max_r2() const;
  double max_r3() const;
  double max_all() const;
};

/// Evaluates the three weak identities by trapezoid in time over the stored
/// snapshots and periodic trapezoid in space. Initial-time terms use the
/// first field.
WeakResidualReport weak_residual(std::span<const EulerianField> fields,
                                 std::span<const TestFunction> basket);

WeakResidualReport weak_residual(const Trajectory& traj, std::span<const TestFunction> basket);

}  // namespace scpulse

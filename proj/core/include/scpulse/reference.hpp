#pragma once

#include <vector>

#include "scpulse/grid.hpp"
#include "scpulse/integrator.hpp"

namespace scpulse {

/// Direct Eulerian state for u_t = u^2 u_x + d_x^{-1}(u - u u_x^2) - f(t).
/// Only meaningful while u stays smooth.
struct RefState {
  double t = 0.0;
  GridFn u;
  double h = 0.0;  // frozen initial energy
};

struct RefDerivative {
  GridFn du;
  double f = 0.0;
};

RefDerivative ref_rhs_full(const RefState& r, Derivative method = Derivative::fd4);

/// u^2 u_x + g - f with u_x = diff(u), g = inv_deriv(u - u u_x^2) and
/// f = quad((1 - u_x^2) g) / (1 - h).
GridFn ref_rhs(const RefState& r, Derivative method = Derivative::fd4);

RefState ref_step(const RefState& r, double dt, Derivative method = Derivative::fd4);

/// RK4 march at cfg.dt with the same snapshot landing as integrate(); the
/// returned states sit at 0 and every snapshot target. h is quad(diff(u0)^2).
/// Throws SmoothnessLost once max|diff(u)| exceeds 10x its initial value.
std::vector<RefState> ref_integrate(const GridFn& u0, const RunConfig& cfg,
                                    Derivative method = Derivative::fd4);

inline constexpr double kSmoothnessFactor = 10.0;

}  // namespace scpulse

#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <string>

#include "scpulse/grid.hpp"
#include "scpulse/profiles.hpp"

namespace scpulse {

/// Initial profile u0 sampled on the x-grid together with the two scalars
/// that parametrise the whole evolution: the energy h = int u0x^2 and
/// F0 = int (u0 - u0 u0x^2).
struct InitialData {
  GridFn u0;
  GridFn u0x;
  double h = 0.0;
  double F0 = 0.0;
  bool theorem_scope = false;
  std::string profile_spec;

  // Off-grid evaluators of u0 and u0x: closed form when available, the
  // trigonometric interpolant of the samples otherwise.
  std::function<double(double)> u_at;
  std::function<double(double)> ux_at;
};

/// Samples a closed-form profile on m nodes; h and F0 are left unset.
InitialData sample_profile(const Profile& profile, std::size_t m);

/// Wraps raw samples; u0x is the spectral derivative. h and F0 unset.
InitialData sample_data(GridFn u0);

/// sample_profile followed by compute_h and check_theorem_condition.
InitialData make_initial_data(const Profile& profile, std::size_t m);

/// h = quad_period(u0x^2), stored into id. Throws HNearOne if |1-h| < 1e-8.
double compute_h(InitialData& id);

/// F0 = quad_period(u0 - u0 u0x^2), stored into id; sets theorem_scope when
/// |F0| <= 1e-10 (1 + max|u0|).
double check_theorem_condition(InitialData& id);

/// Lagrangian unknowns on the xi-grid. y is kept unwrapped with winding 1;
/// h is the frozen initial energy entering every 1/(1-h) factor.
struct LagrangianState {
  double t = 0.0;
  double h = 0.0;
  MonotoneMap y;
  GridFn U;
  GridFn V;
  GridFn W;
  GridFn Q;
  std::optional<GridFn> yxi;  // augmented mode only
  std::optional<GridFn> Uxi;

  std::size_t size() const noexcept { return U.size(); }
  bool augmented() const noexcept { return yxi.has_value(); }
};

/// dy/dxi at the nodes: the evolved field in augmented mode, V Q otherwise.
GridFn y_slope(const LagrangianState& s);
/// dU/dxi at the nodes: the evolved field in augmented mode, W Q otherwise.
GridFn U_slope(const LagrangianState& s);

struct NonlocalTerms {
  double P1 = 0.0;  // int (2UQV - UQ)
  GridFn K;         // int_{xi0}^{xi} (2UQV - UQ), unwrapped
  double xi0 = 0.0; // representative of y^{-1}(0) in [0, 1)
};

struct StateDerivative {
  GridFn dy;
  GridFn dU;
  GridFn dV;
  GridFn dW;
  GridFn dQ;
  std::optional<GridFn> dyxi;
  std::optional<GridFn> dUxi;
  double P1 = 0.0;
  GridFn K;
  double xi0 = 0.0;
  /// The boundary term f(t) in Lagrangian form.
  double f = 0.0;
};

/// y0 solves y0 + int_0^{y0} u0x^2 = (1+h) xi; U0 = u0(y0),
/// V0 = 1/(1+u0x^2(y0)), W0 = u0x(y0)/(1+u0x^2(y0)), Q0 = 1+h.
LagrangianState build_initial_lagrangian(const InitialData& id, std::size_t n,
                                         bool augmented = false);

NonlocalTerms nonlocal_terms(const LagrangianState& s);

/// Right-hand side of the semilinear system:
///   y_t = -U^2
///   U_t = K - P1 y - (1/(1-h)) int (2QV - Q)(K - P1 y)
///   V_t = -2UW + 2WV P1
///   W_t = 2UV - U - 2V^2 P1 + V P1
///   Q_t = -2WQ P1
/// plus, in augmented mode, y_xi_t = -2U U_xi and U_xi_t = UQ(2V-1) - P1 y_xi.
StateDerivative rhs(const LagrangianState& s);

struct Conserved {
  double Etilde = 0.0;  // int (Q - QV)
  double Ftilde = 0.0;  // int (2UQV - UQ)
};

Conserved conserved(const LagrangianState& s);

struct InvariantRecord {
  double wv = 0.0;        // max |W^2 + V^2 - V|
  double yxi = 0.0;       // max |y_xi - VQ|
  double uxi = 0.0;       // max |U_xi - WQ|
  double min_v = 0.0;
  double max_v = 0.0;
  double min_q = 0.0;
  double w_excess = 0.0;  // max(0, max|W| - 1/2)
  double winding_defect = 0.0;

  /// Largest of the three pointwise identity residuals.
  double identity_max() const noexcept;
};

InvariantRecord invariant_residuals(const LagrangianState& s,
                                    Derivative method = Derivative::fd4);

}  // namespace scpulse

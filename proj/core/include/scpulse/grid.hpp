#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace scpulse {

inline constexpr std::size_t kMinGridSize = 8;

/// Samples of a 1-periodic real function on the uniform grid x_j = j/N.
///
/// Value type: cheap to move, immutable once shared. Elementwise arithmetic
/// is provided because every formula in the solver is pointwise on nodes.
class GridFn {
 public:
  GridFn() = default;
  explicit GridFn(std::size_t n, double value = 0.0);
  explicit GridFn(std::vector<double> samples);

  /// Samples f(j/N) for j = 0..N-1.
  template <class F>
  static GridFn sample(std::size_t n, F&& f) {
    GridFn g(n);
    for (std::size_t j = 0; j < n; ++j) {
      g.samples_[j] = f(static_cast<double>(j) / static_cast<double>(n));
    }
    return g;
  }

  std::size_t size() const noexcept { return samples_.size(); }
  bool empty() const noexcept { return samples_.empty(); }
  double node(std::size_t j) const noexcept {
    return static_cast<double>(j) / static_cast<double>(samples_.size());
  }

  double operator[](std::size_t j) const noexcept { return samples_[j]; }
  double& operator[](std::size_t j) noexcept { return samples_[j]; }
  /// Periodic access for any integer index.
  double wrapped(long j) const noexcept;

  std::span<const double> samples() const noexcept { return samples_; }
  std::span<double> samples() noexcept { return samples_; }
  const std::vector<double>& vector() const noexcept { return samples_; }

  double min() const;
  double max() const;
  double max_abs() const;
  bool all_finite() const;

  GridFn& operator+=(const GridFn& o);
  GridFn& operator-=(const GridFn& o);
  GridFn& operator*=(const GridFn& o);
  GridFn& operator+=(double c);
  GridFn& operator-=(double c);
  GridFn& operator*=(double c);

  friend bool operator==(const GridFn&, const GridFn&) = default;

 private:
  std::vector<double> samples_;
};

GridFn operator+(GridFn a, const GridFn& b);
GridFn operator-(GridFn a, const GridFn& b);
GridFn operator*(GridFn a, const GridFn& b);
GridFn operator+(GridFn a, double c);
GridFn operator-(GridFn a, double c);
GridFn operator*(GridFn a, double c);
GridFn operator*(double c, GridFn a);
GridFn operator+(double c, GridFn a);
GridFn operator-(double c, GridFn a);
GridFn operator-(GridFn a);

/// max_j |a_j - b_j|.
double max_abs_diff(const GridFn& a, const GridFn& b);

/// Samples m(j/N) of a nondecreasing map with m(xi + 1) = m(xi) + winding.
///
/// Construction validates monotonicity after unwrapping (including the
/// wrap-around step m(0) + winding - m((N-1)/N)) and throws NonMonotone on a
/// step below -1e-12 * winding.
class MonotoneMap {
 public:
  MonotoneMap() = default;
  MonotoneMap(std::vector<double> samples, double winding);
  MonotoneMap(const GridFn& samples, double winding);

  std::size_t size() const noexcept { return samples_.size(); }
  double winding() const noexcept { return winding_; }
  double operator[](std::size_t j) const noexcept { return samples_[j]; }
  /// m at node j/N for any integer j, using the winding.
  double unwrapped(long j) const noexcept;
  std::span<const double> samples() const noexcept { return samples_; }
  GridFn as_gridfn() const { return GridFn(samples_); }
  /// m(xi) - winding * xi sampled on nodes; always periodic.
  GridFn periodic_part() const;

 private:
  std::vector<double> samples_;
  double winding_ = 1.0;
};

inline constexpr double kMonotoneSlack = 1e-12;

// --- quadrature and calculus -------------------------------------------------

/// Mean over the unit period: composite trapezoid, left-to-right summation.
double quad_period(const GridFn& f);

enum class Antiderivative {
  trapezoid,  ///< cumulative trapezoid, O(N^-2)
  spectral,   ///< exact for trigonometric polynomials below Nyquist
};

enum class Derivative {
  fd4,       ///< 4th-order central differences
  spectral,  ///< discrete Fourier differentiation
};

/// Antiderivative of the mean-zero projection of f, anchored at g(0) = 0.
GridFn inv_deriv(const GridFn& f, Antiderivative method = Antiderivative::spectral);

/// Periodic derivative of f.
GridFn diff(const GridFn& f, Derivative method = Derivative::fd4);

// --- interpolation and inversion ---------------------------------------------

/// Periodic Catmull-Rom interpolation; xi is reduced mod 1.
double interp(const GridFn& f, double xi);

/// Periodic cubic Hermite interpolation with node derivatives df/dxi.
double hermite_interp(const GridFn& f, const GridFn& slope, double xi);

/// Linear interpolation of a monotone map at any real xi.
double eval_monotone(const MonotoneMap& m, double xi);

/// Cubic Hermite evaluation of a monotone map with node slopes dm/dxi.
double eval_monotone(const MonotoneMap& m, const GridFn& slope, double xi);

/// Solves m(xi) = target for the piecewise-linear map through the nodes.
///
/// The target is shifted by whole windings into [m(0), m(0) + winding), the
/// bracketing node pair is located by binary search, and the result is shifted
/// back, so the returned xi is unwrapped (it may lie outside [0, 1)). When the
/// target sits on a plateau of equal node values, the midpoint of the plateau
/// is returned.
double invert_monotone(const MonotoneMap& m, double target);

/// Same bracketing as above, then solves the cubic Hermite segment built from
/// node slopes dm/dxi (safeguarded Newton). Falls back to the bracketing
/// result on plateaus.
double invert_monotone(const MonotoneMap& m, const GridFn& slope, double target);

// --- trigonometric interpolation ----------------------------------------------

/// Trigonometric interpolant of periodic samples, evaluable anywhere.
///
/// The Nyquist mode (even N) is kept as a cosine so that node values are
/// reproduced; it is dropped from derivatives and antiderivatives.
class FourierInterpolant {
 public:
  explicit FourierInterpolant(const GridFn& f);

  double operator()(double x) const;
  double derivative(double x) const;
  /// int_0^x (f - mean(f)); periodic in x.
  double antiderivative(double x) const;
  double mean() const noexcept { return mean_; }
  std::size_t size() const noexcept { return n_; }

 private:
  std::size_t n_ = 0;
  double mean_ = 0.0;
  double nyquist_ = 0.0;
  std::vector<std::complex<double>> coeffs_;  // k = 1 .. ceil(N/2)-1, scaled
  double anti_at_zero_ = 0.0;
};

}  // namespace scpulse

#include "scpulse/grid.hpp"

#include <algorithm>
#include <cfloat>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "scpulse/errors.hpp"
#include "spectral.hpp"

namespace scpulse {
namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

void require_size(std::size_t n) {
  if (n < kMinGridSize) {
    throw std::invalid_argument("grid size must be at least 8, got " + std::to_string(n));
  }
}

void require_same_size(const GridFn& a, const GridFn& b) {
  if (a.size() != b.size()) {
    throw std::invalid_argument("GridFn size mismatch: " + std::to_string(a.size()) +
                                " vs " + std::to_string(b.size()));
  }
}

long floor_div(long a, long b) {
  long q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

// Splits xi into a cell index and a fractional offset. Offsets within a few
// ulps of a node snap onto it so that node queries reproduce samples exactly.
struct Cell {
  long index;
  double frac;
};

Cell locate_cell(double xi, std::size_t n) {
  const double s = xi * static_cast<double>(n);
  const double r = std::nearbyint(s);
  if (std::abs(s - r) <= 8.0 * DBL_EPSILON * std::max(1.0, std::abs(s))) {
    return {static_cast<long>(r), 0.0};
  }
  const double f = std::floor(s);
  return {static_cast<long>(f), s - f};
}

double hermite(double p0, double p1, double d0, double d1, double s) {
  const double s2 = s * s;
  const double s3 = s2 * s;
  const double h00 = 2.0 * s3 - 3.0 * s2 + 1.0;
  const double h10 = s3 - 2.0 * s2 + s;
  const double h01 = -2.0 * s3 + 3.0 * s2;
  const double h11 = s3 - s2;
  return h00 * p0 + h10 * d0 + h01 * p1 + h11 * d1;
}

double hermite_slope(double p0, double p1, double d0, double d1, double s) {
  const double s2 = s * s;
  const double h00 = 6.0 * s2 - 6.0 * s;
  const double h10 = 3.0 * s2 - 4.0 * s + 1.0;
  const double h01 = -6.0 * s2 + 6.0 * s;
  const double h11 = 3.0 * s2 - 2.0 * s;
  return h00 * p0 + h10 * d0 + h01 * p1 + h11 * d1;
}

struct Bracket {
  double shift;     // whole windings removed from the target
  double reduced;   // target - shift * winding
  long lower;       // bracketing cell [lower, lower + 1]
  bool plateau;     // target coincides with one or more nodes
  double xi;        // linear (or plateau midpoint) answer, unwrapped
};

Bracket bracket(const MonotoneMap& m, double target) {
  const long n = static_cast<long>(m.size());
  const double w = m.winding();
  const double m0 = m[0];
  double k = std::floor((target - m0) / w);
  double tp = target - k * w;
  if (tp >= m0 + w) {
    tp -= w;
    k += 1.0;
  } else if (tp < m0) {
    tp += w;
    k -= 1.0;
  }
  const double eps = 4.0 * DBL_EPSILON * (std::abs(tp) + w);

  // first extended index i in [0, n] with m_i >= tp - eps
  long lo = 0;
  long hi = n;
  while (lo < hi) {
    const long mid = lo + (hi - lo) / 2;
    if (m.unwrapped(mid) >= tp - eps) {
      hi = mid;
    } else {
      lo = mid + 1;
    }
  }
  const double dn = static_cast<double>(n);
  if (m.unwrapped(lo) <= tp + eps) {
    long a = lo;
    long b = lo;
    while (a > lo - n && m.unwrapped(a - 1) >= tp - eps) --a;
    while (b < lo + n && m.unwrapped(b + 1) <= tp + eps) ++b;
    const double xi = 0.5 * static_cast<double>(a + b) / dn + k;
    return {k, tp, lo, true, xi};
  }
  const long i = lo - 1;
  const double e0 = m.unwrapped(i);
  const double e1 = m.unwrapped(lo);
  const double frac = (tp - e0) / (e1 - e0);
  return {k, tp, i, false, (static_cast<double>(i) + frac) / dn + k};
}

}  // namespace

// --- GridFn ----------------------------------------------------------------

GridFn::GridFn(std::size_t n, double value) : samples_(n, value) { require_size(n); }

GridFn::GridFn(std::vector<double> samples) : samples_(std::move(samples)) {
  require_size(samples_.size());
}

double GridFn::wrapped(long j) const noexcept {
  const long n = static_cast<long>(samples_.size());
  long r = j % n;
  if (r < 0) r += n;
  return samples_[static_cast<std::size_t>(r)];
}

double GridFn::min() const { return *std::min_element(samples_.begin(), samples_.end()); }
double GridFn::max() const { return *std::max_element(samples_.begin(), samples_.end()); }

double GridFn::max_abs() const {
  double m = 0.0;
  for (double v : samples_) m = std::max(m, std::abs(v));
  return m;
}

bool GridFn::all_finite() const {
  return std::all_of(samples_.begin(), samples_.end(), [](double v) { return std::isfinite(v); });
}

GridFn& GridFn::operator+=(const GridFn& o) {
  require_same_size(*this, o);
  for (std::size_t j = 0; j < samples_.size(); ++j) samples_[j] += o.samples_[j];
  return *this;
}

GridFn& GridFn::operator-=(const GridFn& o) {
  require_same_size(*this, o);
  for (std::size_t j = 0; j < samples_.size(); ++j) samples_[j] -= o.samples_[j];
  return *this;
}

GridFn& GridFn::operator*=(const GridFn& o) {
  require_same_size(*this, o);
  for (std::size_t j = 0; j < samples_.size(); ++j) samples_[j] *= o.samples_[j];
  return *this;
}

GridFn& GridFn::operator+=(double c) {
  for (double& v : samples_) v += c;
  return *this;
}

GridFn& GridFn::operator-=(double c) {
  for (double& v : samples_) v -= c;
  return *this;
}

GridFn& GridFn::operator*=(double c) {
  for (double& v : samples_) v *= c;
  return *this;
}

GridFn operator+(GridFn a, const GridFn& b) { return a += b; }
GridFn operator-(GridFn a, const GridFn& b) { return a -= b; }
GridFn operator*(GridFn a, const GridFn& b) { return a *= b; }
GridFn operator+(GridFn a, double c) { return a += c; }
GridFn operator-(GridFn a, double c) { return a -= c; }
GridFn operator*(GridFn a, double c) { return a *= c; }
GridFn operator*(double c, GridFn a) { return a *= c; }
GridFn operator+(double c, GridFn a) { return a += c; }

GridFn operator-(double c, GridFn a) {
  for (double& v : a.samples()) v = c - v;
  return a;
}

GridFn operator-(GridFn a) { return a *= -1.0; }

double max_abs_diff(const GridFn& a, const GridFn& b) {
  require_same_size(a, b);
  double m = 0.0;
  for (std::size_t j = 0; j < a.size(); ++j) m = std::max(m, std::abs(a[j] - b[j]));
  return m;
}

// --- MonotoneMap -----------------------------------------------------------

MonotoneMap::MonotoneMap(std::vector<double> samples, double winding)
    : samples_(std::move(samples)), winding_(winding) {
  require_size(samples_.size());
  if (!(winding_ > 0.0)) {
    throw std::invalid_argument("MonotoneMap winding must be positive");
  }
  const double slack = -kMonotoneSlack * winding_;
  const std::size_t n = samples_.size();
  for (std::size_t j = 0; j < n; ++j) {
    const double next = (j + 1 < n) ? samples_[j + 1] : samples_[0] + winding_;
    const double step = next - samples_[j];
    if (!(step >= slack)) {
      std::ostringstream os;
      os.precision(17);
      os << "map decreases by " << -step << " between nodes " << j << " and " << (j + 1);
      throw NonMonotone(os.str());
    }
  }
}

MonotoneMap::MonotoneMap(const GridFn& samples, double winding)
    : MonotoneMap(samples.vector(), winding) {}

double MonotoneMap::unwrapped(long j) const noexcept {
  const long n = static_cast<long>(samples_.size());
  const long q = floor_div(j, n);
  return samples_[static_cast<std::size_t>(j - q * n)] + static_cast<double>(q) * winding_;
}

GridFn MonotoneMap::periodic_part() const {
  GridFn p(samples_);
  const double n = static_cast<double>(samples_.size());
  for (std::size_t j = 0; j < samples_.size(); ++j) {
    p[j] -= winding_ * static_cast<double>(j) / n;
  }
  return p;
}

// --- quadrature and calculus -------------------------------------------------

double quad_period(const GridFn& f) {
  double sum = 0.0;
  for (double v : f.samples()) sum += v;
  return sum / static_cast<double>(f.size());
}

GridFn inv_deriv(const GridFn& f, Antiderivative method) {
  const std::size_t n = f.size();
  const double mean = quad_period(f);
  GridFn g(n, 0.0);
  if (method == Antiderivative::trapezoid) {
    const double half_step = 0.5 / static_cast<double>(n);
    for (std::size_t j = 0; j + 1 < n; ++j) {
      g[j + 1] = g[j] + half_step * ((f[j] - mean) + (f[j + 1] - mean));
    }
    return g;
  }
  auto c = detail::rfft(f.samples());
  c[0] = 0.0;
  for (std::size_t k = 1; k < c.size(); ++k) {
    if (2 * k == n) {
      c[k] = 0.0;
    } else {
      c[k] /= std::complex<double>(0.0, kTwoPi * static_cast<double>(k));
    }
  }
  auto out = detail::irfft(c, n);
  const double anchor = out[0];
  for (std::size_t j = 0; j < n; ++j) g[j] = out[j] - anchor;
  return g;
}

GridFn diff(const GridFn& f, Derivative method) {
  const std::size_t n = f.size();
  GridFn d(n, 0.0);
  if (method == Derivative::fd4) {
    const double scale = static_cast<double>(n) / 12.0;
    const long ln = static_cast<long>(n);
    for (long j = 0; j < ln; ++j) {
      d[static_cast<std::size_t>(j)] =
          scale * ((f.wrapped(j - 2) - f.wrapped(j + 2)) +
                   8.0 * (f.wrapped(j + 1) - f.wrapped(j - 1)));
    }
    return d;
  }
  auto c = detail::rfft(f.samples());
  c[0] = 0.0;
  for (std::size_t k = 1; k < c.size(); ++k) {
    if (2 * k == n) {
      c[k] = 0.0;
    } else {
      c[k] *= std::complex<double>(0.0, kTwoPi * static_cast<double>(k));
    }
  }
  auto out = detail::irfft(c, n);
  for (std::size_t j = 0; j < n; ++j) d[j] = out[j];
  return d;
}

// --- interpolation and inversion ---------------------------------------------

double interp(const GridFn& f, double xi) {
  const Cell c = locate_cell(xi - std::floor(xi), f.size());
  if (c.frac == 0.0) return f.wrapped(c.index);
  const double p0 = f.wrapped(c.index - 1);
  const double p1 = f.wrapped(c.index);
  const double p2 = f.wrapped(c.index + 1);
  const double p3 = f.wrapped(c.index + 2);
  const double s = c.frac;
  return 0.5 * (2.0 * p1 + (p2 - p0) * s + (2.0 * p0 - 5.0 * p1 + 4.0 * p2 - p3) * s * s +
                (3.0 * (p1 - p2) + p3 - p0) * s * s * s);
}

double hermite_interp(const GridFn& f, const GridFn& slope, double xi) {
  require_same_size(f, slope);
  const Cell c = locate_cell(xi - std::floor(xi), f.size());
  if (c.frac == 0.0) return f.wrapped(c.index);
  const double dx = 1.0 / static_cast<double>(f.size());
  return hermite(f.wrapped(c.index), f.wrapped(c.index + 1), dx * slope.wrapped(c.index),
                 dx * slope.wrapped(c.index + 1), c.frac);
}

double eval_monotone(const MonotoneMap& m, double xi) {
  const Cell c = locate_cell(xi, m.size());
  const double a = m.unwrapped(c.index);
  if (c.frac == 0.0) return a;
  return a + c.frac * (m.unwrapped(c.index + 1) - a);
}

double eval_monotone(const MonotoneMap& m, const GridFn& slope, double xi) {
  if (slope.size() != m.size()) throw std::invalid_argument("slope size mismatch");
  const Cell c = locate_cell(xi, m.size());
  if (c.frac == 0.0) return m.unwrapped(c.index);
  const double dx = 1.0 / static_cast<double>(m.size());
  return hermite(m.unwrapped(c.index), m.unwrapped(c.index + 1), dx * slope.wrapped(c.index),
                 dx * slope.wrapped(c.index + 1), c.frac);
}

double invert_monotone(const MonotoneMap& m, double target) { return bracket(m, target).xi; }

double invert_monotone(const MonotoneMap& m, const GridFn& slope, double target) {
  if (slope.size() != m.size()) throw std::invalid_argument("slope size mismatch");
  const Bracket b = bracket(m, target);
  if (b.plateau) return b.xi;

  const double dx = 1.0 / static_cast<double>(m.size());
  const double p0 = m.unwrapped(b.lower);
  const double p1 = m.unwrapped(b.lower + 1);
  const double d0 = dx * slope.wrapped(b.lower);
  const double d1 = dx * slope.wrapped(b.lower + 1);
  const double tp = b.reduced;
  const double tol = 2.0 * DBL_EPSILON * (std::abs(tp) + m.winding());

  double lo = 0.0;
  double hi = 1.0;
  double s = (b.xi - b.shift) * static_cast<double>(m.size()) - static_cast<double>(b.lower);
  s = std::clamp(s, 0.0, 1.0);
  for (int it = 0; it < 100; ++it) {
    const double r = hermite(p0, p1, d0, d1, s) - tp;
    if (std::abs(r) <= tol) break;
    if (r < 0.0) {
      lo = s;
    } else {
      hi = s;
    }
    if (hi - lo <= 4.0 * DBL_EPSILON) break;
    const double dr = hermite_slope(p0, p1, d0, d1, s);
    double next = (dr > 0.0) ? s - r / dr : lo - 1.0;
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    s = next;
  }
  return (static_cast<double>(b.lower) + s) * dx + b.shift;
}

// --- FourierInterpolant --------------------------------------------------------

FourierInterpolant::FourierInterpolant(const GridFn& f) : n_(f.size()) {
  auto c = detail::rfft(f.samples());
  const double inv_n = 1.0 / static_cast<double>(n_);
  mean_ = c[0].real() * inv_n;
  const std::size_t kmax = (n_ % 2 == 0) ? n_ / 2 - 1 : (n_ - 1) / 2;
  coeffs_.reserve(kmax);
  for (std::size_t k = 1; k <= kmax; ++k) coeffs_.push_back(c[k] * inv_n);
  if (n_ % 2 == 0) nyquist_ = c[n_ / 2].real() * inv_n;
  anti_at_zero_ = 0.0;
  anti_at_zero_ = antiderivative(0.0);
}

double FourierInterpolant::operator()(double x) const {
  const std::complex<double> z = std::polar(1.0, kTwoPi * x);
  std::complex<double> zk = 1.0;
  double sum = 0.0;
  for (const auto& ck : coeffs_) {
    zk *= z;
    sum += (ck * zk).real();
  }
  double v = mean_ + 2.0 * sum;
  if (nyquist_ != 0.0) v += nyquist_ * std::cos(std::numbers::pi * static_cast<double>(n_) * x);
  return v;
}

double FourierInterpolant::derivative(double x) const {
  const std::complex<double> z = std::polar(1.0, kTwoPi * x);
  std::complex<double> zk = 1.0;
  double sum = 0.0;
  for (std::size_t k = 0; k < coeffs_.size(); ++k) {
    zk *= z;
    const double wk = kTwoPi * static_cast<double>(k + 1);
    sum += (coeffs_[k] * zk * std::complex<double>(0.0, wk)).real();
  }
  return 2.0 * sum;
}

double FourierInterpolant::antiderivative(double x) const {
  const std::complex<double> z = std::polar(1.0, kTwoPi * x);
  std::complex<double> zk = 1.0;
  double sum = 0.0;
  for (std::size_t k = 0; k < coeffs_.size(); ++k) {
    zk *= z;
    const double wk = kTwoPi * static_cast<double>(k + 1);
    sum += (coeffs_[k] * zk / std::complex<double>(0.0, wk)).real();
  }
  return 2.0 * sum - anti_at_zero_;
}

}  // namespace scpulse

#pragma once

// Scalar kernels: adaptive Gauss-Kronrod quadrature, safeguarded Brent root
// finding, and geometric bracket expansion.

#include <algorithm>
#include <array>
#include <cmath>
#include <concepts>
#include <limits>
#include <queue>
#include <sstream>
#include <utility>
#include <vector>

#include "ecg/error.hpp"

namespace ecg {

struct ToleranceConfig {
  double abs_tol = 1e-12;
  double rel_tol = 1e-10;
  int max_iterations = 200;
};

inline constexpr double kMinTolerance = 10.0 * std::numeric_limits<double>::epsilon();

inline void validate(const ToleranceConfig& t) {
  if (!(t.abs_tol >= kMinTolerance) || !(t.rel_tol >= kMinTolerance) || t.max_iterations <= 0)
    throw Error(ErrorKind::InvalidParams, "ToleranceConfig: tolerances must be >= 10 eps and max_iterations > 0");
}

inline ToleranceConfig root_tolerance() { return {1e-12, 1e-10, 200}; }

/// For quadrature max_iterations bounds the bisection depth of any panel.
inline ToleranceConfig quadrature_tolerance() { return {1e-12, 1e-10, 60}; }

enum class Direction { Up, Down };

namespace detail {

// 15-point Kronrod extension of the 7-point Gauss rule (QUADPACK qk15).
inline constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
inline constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
inline constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Panel {
  double a, b, value, error;
  int depth;
  bool operator<(const Panel& o) const { return error < o.error; }
};

template <class F>
Panel gauss_kronrod15(F& f, double a, double b, int depth) {
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const double fc = f(center);
  double kronrod = fc * kWgk[7];
  double gauss = fc * kWg[3];
  for (int j = 0; j < 7; ++j) {
    const double dx = half * kXgk[j];
    const double sum = f(center - dx) + f(center + dx);
    kronrod += kWgk[j] * sum;
    if (j % 2 == 1) gauss += kWg[j / 2] * sum;
  }
  kronrod *= half;
  gauss *= half;
  return {a, b, kronrod, std::abs(kronrod - gauss), depth};
}

}  // namespace detail

/// Globally adaptive G7/K15 quadrature: the panel with the largest error
/// estimate is bisected until the summed estimate meets
/// max(abs_tol, rel_tol * |Q|).
template <class F>
  requires std::invocable<F&, double>
double integrate(F&& f, double a, double b, const ToleranceConfig& tol = quadrature_tolerance()) {
  validate(tol);
  if (!(a <= b)) throw Error(ErrorKind::Domain, "integrate: requires a <= b");
  if (a == b) return 0.0;

  constexpr std::size_t kMaxPanels = 20000;
  std::priority_queue<detail::Panel> heap;
  auto first = detail::gauss_kronrod15(f, a, b, 0);
  double total = first.value;
  double total_err = first.error;
  heap.push(first);

  while (true) {
    if (!std::isfinite(total)) throw Error(ErrorKind::Domain, "integrate: integrand not finite on [a, b]");
    if (total_err <= std::max(tol.abs_tol, tol.rel_tol * std::abs(total))) return total;
    detail::Panel worst = heap.top();
    if (worst.depth >= tol.max_iterations || heap.size() >= kMaxPanels) {
      std::ostringstream os;
      os.precision(17);
      os << "integrate: refinement budget exhausted, error estimate " << total_err;
      throw AccuracyError(os.str(), total, a, b);
    }
    heap.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    auto left = detail::gauss_kronrod15(f, worst.a, mid, worst.depth + 1);
    auto right = detail::gauss_kronrod15(f, mid, worst.b, worst.depth + 1);
    total += left.value + right.value - worst.value;
    total_err += left.error + right.error - worst.error;
    heap.push(left);
    heap.push(right);
  }
}

/// Brent's method (inverse quadratic interpolation guarded by bisection).
/// Every iterate stays inside the current sign-change bracket. Stops when
/// |f(x)| <= abs_tol or the bracket width <= rel_tol |x| + abs_tol.
template <class F>
  requires std::invocable<F&, double>
double find_root(F&& f, double lo, double hi, const ToleranceConfig& tol = root_tolerance()) {
  validate(tol);
  if (lo > hi) std::swap(lo, hi);
  double a = lo, b = hi;
  double fa = f(a), fb = f(b);
  if (fa == 0.0) return a;
  if (fb == 0.0) return b;
  if (!std::isfinite(fa) || !std::isfinite(fb))
    throw Error(ErrorKind::Bracket, "find_root: function not finite at bracket ends");
  if ((fa > 0.0) == (fb > 0.0)) {
    std::ostringstream os;
    os.precision(17);
    os << "find_root: no sign change on [" << lo << ", " << hi << "] (f = " << fa << ", " << fb << ")";
    throw Error(ErrorKind::Bracket, os.str());
  }

  double c = a, fc = fa;
  double d = b - a, e = d;
  for (int iter = 0; iter < tol.max_iterations; ++iter) {
    if ((fb > 0.0) == (fc > 0.0)) {
      c = a;
      fc = fa;
      d = e = b - a;
    }
    if (std::abs(fc) < std::abs(fb)) {
      a = b;
      b = c;
      c = a;
      fa = fb;
      fb = fc;
      fc = fa;
    }
    const double width_tol = tol.rel_tol * std::abs(b) + tol.abs_tol;
    const double m = 0.5 * (c - b);
    if (std::abs(fb) <= tol.abs_tol || std::abs(c - b) <= width_tol) return b;

    const double step_tol = 0.5 * width_tol;
    if (std::abs(e) >= step_tol && std::abs(fa) > std::abs(fb)) {
      double p, q;
      const double s = fb / fa;
      if (a == c) {
        p = 2.0 * m * s;
        q = 1.0 - s;
      } else {
        const double qa = fa / fc;
        const double r = fb / fc;
        p = s * (2.0 * m * qa * (qa - r) - (b - a) * (r - 1.0));
        q = (qa - 1.0) * (r - 1.0) * (s - 1.0);
      }
      if (p > 0.0) q = -q;
      p = std::abs(p);
      if (2.0 * p < std::min(3.0 * m * q - std::abs(step_tol * q), std::abs(e * q))) {
        e = d;
        d = p / q;
      } else {
        d = m;
        e = d;
      }
    } else {
      d = m;
      e = d;
    }
    a = b;
    fa = fb;
    b += std::abs(d) > step_tol ? d : (m > 0.0 ? step_tol : -step_tol);
    // Never leave the initial bracket.
    b = std::clamp(b, lo, hi);
    fb = f(b);
    if (fb == 0.0) return b;
  }
  std::ostringstream os;
  os.precision(17);
  os << "find_root: max_iterations reached, bracket [" << std::min(b, c) << ", " << std::max(b, c) << "]";
  throw AccuracyError(os.str(), b, std::min(b, c), std::max(b, c));
}

/// Geometric search (factor 2) from `seed` until f changes sign. Returns an
/// ordered pair (lo, hi); (seed, seed) when f(seed) == 0.
template <class F>
  requires std::invocable<F&, double>
std::pair<double, double> expand_bracket(F&& f, double seed, Direction direction) {
  constexpr double kUpper = 1e308;
  constexpr double kLower = 1e-300;
  double prev = seed;
  double fprev = f(prev);
  if (!std::isfinite(fprev)) throw Error(ErrorKind::Domain, "expand_bracket: f not finite at seed");
  if (fprev == 0.0) return {seed, seed};
  while (true) {
    const double next = direction == Direction::Up ? prev * 2.0 : prev * 0.5;
    if (next > kUpper || next < kLower || !std::isfinite(next) || next == 0.0) {
      std::ostringstream os;
      os.precision(17);
      os << "expand_bracket: no sign change before " << (direction == Direction::Up ? "1e308" : "1e-300")
         << " (last x = " << prev << ", f = " << fprev << ")";
      throw Error(ErrorKind::NoRootInRange, os.str());
    }
    const double fnext = f(next);
    if (!std::isfinite(fnext)) throw Error(ErrorKind::Domain, "expand_bracket: f not finite during expansion");
    if (fnext == 0.0 || (fnext > 0.0) != (fprev > 0.0)) {
      return direction == Direction::Up ? std::pair{prev, next} : std::pair{next, prev};
    }
    prev = next;
    fprev = fnext;
  }
}

}  // namespace ecg

#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <utility>

namespace mcfsol::numerics {

/// Bisection on a sign-changing bracket. Stops when the bracket is narrower
/// than xtol or cannot be split further in floating point.
template <class F>
double bisect(F&& f, double lo, double hi, double xtol = 0.0, int max_iter = 300) {
  double flo = f(lo);
  if (flo == 0.0) return lo;
  double fhi = f(hi);
  if (fhi == 0.0) return hi;
  for (int i = 0; i < max_iter; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= std::min(lo, hi) || mid >= std::max(lo, hi)) break;
    if (std::abs(hi - lo) <= xtol) break;
    const double fm = f(mid);
    if (fm == 0.0) return mid;
    if (std::signbit(fm) == std::signbit(flo)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
      fhi = fm;
    }
  }
  // Return the endpoint with the smaller residual.
  return std::abs(flo) <= std::abs(fhi) ? lo : hi;
}

/// Newton iteration kept inside [lo, hi]; falls back to bisection whenever a
/// Newton step leaves the bracket. fdf returns {f(x), f'(x)}.
template <class FdF>
double safeguarded_newton(FdF&& fdf, double lo, double hi, double x0, double xtol,
                          int max_iter = 60) {
  double x = std::clamp(x0, lo, hi);
  auto [flo, dlo] = fdf(lo);
  (void)dlo;
  const bool increasing_at_lo = flo < 0.0;
  for (int i = 0; i < max_iter; ++i) {
    auto [fx, dfx] = fdf(x);
    if (fx == 0.0) return x;
    // Shrink the bracket using the sign of f.
    if ((fx < 0.0) == increasing_at_lo) {
      lo = x;
    } else {
      hi = x;
    }
    double next = (dfx != 0.0) ? x - fx / dfx : 0.5 * (lo + hi);
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    if (std::abs(next - x) <= xtol) return next;
    x = next;
  }
  return x;
}

/// Golden-section minimisation of a unimodal function on [a, b].
template <class F>
std::pair<double, double> golden_minimize(F&& f, double a, double b, double xtol,
                                          int max_iter = 200) {
  constexpr double kInvPhi = 0.6180339887498949;
  double c = b - kInvPhi * (b - a);
  double d = a + kInvPhi * (b - a);
  double fc = f(c);
  double fd = f(d);
  for (int i = 0; i < max_iter && std::abs(b - a) > xtol; ++i) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - kInvPhi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + kInvPhi * (b - a);
      fd = f(d);
    }
  }
  return fc < fd ? std::pair{c, fc} : std::pair{d, fd};
}

}  // namespace mcfsol::numerics

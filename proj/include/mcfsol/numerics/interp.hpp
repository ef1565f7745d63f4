#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

namespace mcfsol::numerics {

/// Piecewise cubic Hermite interpolant with Fritsch-Carlson monotone slopes.
class MonotoneCubic {
 public:
  MonotoneCubic() = default;
  MonotoneCubic(std::vector<double> x, std::vector<double> y) : x_(std::move(x)), y_(std::move(y)) {
    const std::size_t n = x_.size();
    d_.assign(n, 0.0);
    if (n < 2) return;
    std::vector<double> delta(n - 1);
    for (std::size_t i = 0; i + 1 < n; ++i) delta[i] = (y_[i + 1] - y_[i]) / (x_[i + 1] - x_[i]);
    if (n == 2) {
      d_[0] = d_[1] = delta[0];
      return;
    }
    for (std::size_t i = 1; i + 1 < n; ++i) {
      if (delta[i - 1] * delta[i] <= 0.0) {
        d_[i] = 0.0;
      } else {
        const double h0 = x_[i] - x_[i - 1];
        const double h1 = x_[i + 1] - x_[i];
        const double w1 = 2.0 * h1 + h0;
        const double w2 = h1 + 2.0 * h0;
        d_[i] = (w1 + w2) / (w1 / delta[i - 1] + w2 / delta[i]);
      }
    }
    d_[0] = end_slope(x_[1] - x_[0], x_[2] - x_[1], delta[0], delta[1]);
    d_[n - 1] = end_slope(x_[n - 1] - x_[n - 2], x_[n - 2] - x_[n - 3], delta[n - 2], delta[n - 3]);
  }

  std::span<const double> x() const { return x_; }
  std::span<const double> y() const { return y_; }

  double operator()(double t) const { return eval(t, 0); }
  double derivative(double t) const { return eval(t, 1); }
  double second_derivative(double t) const { return eval(t, 2); }

 private:
  static double end_slope(double h0, double h1, double del0, double del1) {
    double d = ((2.0 * h0 + h1) * del0 - h0 * del1) / (h0 + h1);
    if (d * del0 <= 0.0) {
      d = 0.0;
    } else if (del0 * del1 <= 0.0 && std::abs(d) > std::abs(3.0 * del0)) {
      d = 3.0 * del0;
    }
    return d;
  }

  double eval(double t, int order) const {
    const std::size_t n = x_.size();
    auto it = std::upper_bound(x_.begin(), x_.end(), t);
    std::size_t k = it == x_.begin() ? 0 : static_cast<std::size_t>(it - x_.begin()) - 1;
    k = std::min(k, n - 2);
    const double h = x_[k + 1] - x_[k];
    const double s = (t - x_[k]) / h;
    const double y0 = y_[k], y1 = y_[k + 1], m0 = d_[k] * h, m1 = d_[k + 1] * h;
    switch (order) {
      case 0: {
        const double h00 = (1 + 2 * s) * (1 - s) * (1 - s);
        const double h10 = s * (1 - s) * (1 - s);
        const double h01 = s * s * (3 - 2 * s);
        const double h11 = s * s * (s - 1);
        return h00 * y0 + h10 * m0 + h01 * y1 + h11 * m1;
      }
      case 1: {
        const double d00 = 6 * s * s - 6 * s;
        const double d10 = 3 * s * s - 4 * s + 1;
        const double d01 = -6 * s * s + 6 * s;
        const double d11 = 3 * s * s - 2 * s;
        return (d00 * y0 + d10 * m0 + d01 * y1 + d11 * m1) / h;
      }
      default: {
        const double e00 = 12 * s - 6;
        const double e10 = 6 * s - 4;
        const double e01 = -12 * s + 6;
        const double e11 = 6 * s - 2;
        return (e00 * y0 + e10 * m0 + e01 * y1 + e11 * m1) / (h * h);
      }
    }
  }

  std::vector<double> x_, y_, d_;
};

/// Cubic Hermite value on [x0, x1] from end values and end derivatives.
inline double hermite(double x0, double x1, double y0, double y1, double dy0, double dy1,
                      double x) {
  const double h = x1 - x0;
  const double s = (x - x0) / h;
  return (1 + 2 * s) * (1 - s) * (1 - s) * y0 + s * (1 - s) * (1 - s) * h * dy0 +
         s * s * (3 - 2 * s) * y1 + s * s * (s - 1) * h * dy1;
}

}  // namespace mcfsol::numerics

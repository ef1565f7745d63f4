#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <initializer_list>
#include <limits>
#include <utility>

namespace mcfsol::numerics {

template <std::size_t N>
using State = std::array<double, N>;

struct StepControl {
  double rtol = 1e-9;
  double atol = 1e-12;
  double initial_step = 0.0;  // 0 selects an automatic first step
  double max_step = std::numeric_limits<double>::infinity();
  double min_step = 0.0;      // absolute step floor; below it the run stops
  long max_steps = 5'000'000;
};

enum class StopReason { ReachedEnd, Observer, StepUnderflow, StepLimit, NonFinite };

template <std::size_t N>
struct IntegrationOutcome {
  StopReason reason = StopReason::ReachedEnd;
  double x = 0.0;
  State<N> y{};
  long steps = 0;
  long rejected = 0;
};

/// Continuous extension of one accepted Dormand-Prince step.
template <std::size_t N>
class DenseStep {
 public:
  double x0 = 0.0, h = 0.0;
  std::array<State<N>, 5> coeff{};

  State<N> operator()(double x) const {
    const double theta = (x - x0) / h;
    const double theta1 = 1.0 - theta;
    State<N> y{};
    for (std::size_t i = 0; i < N; ++i) {
      y[i] = coeff[0][i] +
             theta * (coeff[1][i] +
                      theta1 * (coeff[2][i] + theta * (coeff[3][i] + theta1 * coeff[4][i])));
    }
    return y;
  }
  double x1() const { return x0 + h; }
};

/// Adaptive explicit Runge-Kutta integration with the Dormand-Prince 5(4)
/// embedded pair and its fourth-order dense output.
///
/// `rhs(x, y)` returns dy/dx. `observe(const DenseStep&, const State&)` is
/// invoked after every accepted step with the new state; returning false
/// stops the run with StopReason::Observer. Integration may run backwards
/// (x_end < x0).
template <std::size_t N, class Rhs, class Observer>
IntegrationOutcome<N> dormand_prince(Rhs&& rhs, double x0, State<N> y0, double x_end,
                                     const StepControl& control, Observer&& observe) {
  constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
  constexpr double a21 = 1.0 / 5;
  constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
  constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
  constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                   a54 = -212.0 / 729;
  constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                   a64 = 49.0 / 176, a65 = -5103.0 / 18656;
  constexpr double a71 = 35.0 / 384, a73 = 500.0 / 1113, a74 = 125.0 / 192,
                   a75 = -2187.0 / 6784, a76 = 11.0 / 84;
  constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                   e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;
  constexpr double d1 = -12715105075.0 / 11282082432.0, d3 = 87487479700.0 / 32700410799.0,
                   d4 = -10690763975.0 / 1880347072.0, d5 = 701980252875.0 / 199316789632.0,
                   d6 = -1453857185.0 / 822651844.0, d7 = 69997945.0 / 29380423.0;

  IntegrationOutcome<N> out;
  out.x = x0;
  out.y = y0;
  const double direction = x_end >= x0 ? 1.0 : -1.0;
  if (x_end == x0) return out;

  auto axpy = [](const State<N>& y, double h, std::initializer_list<std::pair<double, const State<N>*>> terms) {
    State<N> r = y;
    for (auto [w, k] : terms) {
      if (w == 0.0) continue;
      for (std::size_t i = 0; i < N; ++i) r[i] += h * w * (*k)[i];
    }
    return r;
  };

  double x = x0;
  State<N> y = y0;
  State<N> k1 = rhs(x, y);

  double h = control.initial_step;
  if (h <= 0.0) {
    // Hairer's starting-step heuristic (simplified).
    double d0 = 0.0, d1n = 0.0;
    for (std::size_t i = 0; i < N; ++i) {
      const double sc = control.atol + control.rtol * std::abs(y[i]);
      d0 += (y[i] / sc) * (y[i] / sc);
      d1n += (k1[i] / sc) * (k1[i] / sc);
    }
    d0 = std::sqrt(d0 / N);
    d1n = std::sqrt(d1n / N);
    h = (d0 < 1e-5 || d1n < 1e-5) ? 1e-6 : 0.01 * d0 / d1n;
    h = std::min(h, std::abs(x_end - x0) * 0.1);
  }
  h = std::min(h, control.max_step);

  DenseStep<N> dense;
  while (true) {
    if (out.steps + out.rejected >= control.max_steps) {
      out.reason = StopReason::StepLimit;
      break;
    }
    const double remaining = std::abs(x_end - x);
    if (remaining <= 0.0) {
      out.reason = StopReason::ReachedEnd;
      break;
    }
    bool last = false;
    if (h >= remaining) {
      h = remaining;
      last = true;
    }
    if (h < control.min_step || x + direction * h == x) {
      out.reason = StopReason::StepUnderflow;
      break;
    }
    const double hs = direction * h;

    const State<N> k2 = rhs(x + c2 * hs, axpy(y, hs, {{a21, &k1}}));
    const State<N> k3 = rhs(x + c3 * hs, axpy(y, hs, {{a31, &k1}, {a32, &k2}}));
    const State<N> k4 = rhs(x + c4 * hs, axpy(y, hs, {{a41, &k1}, {a42, &k2}, {a43, &k3}}));
    const State<N> k5 =
        rhs(x + c5 * hs, axpy(y, hs, {{a51, &k1}, {a52, &k2}, {a53, &k3}, {a54, &k4}}));
    const State<N> k6 = rhs(
        x + hs, axpy(y, hs, {{a61, &k1}, {a62, &k2}, {a63, &k3}, {a64, &k4}, {a65, &k5}}));
    const State<N> y1 =
        axpy(y, hs, {{a71, &k1}, {a73, &k3}, {a74, &k4}, {a75, &k5}, {a76, &k6}});
    const State<N> k7 = rhs(x + hs, y1);

    double err = 0.0;
    bool finite = true;
    for (std::size_t i = 0; i < N; ++i) {
      const double ei = hs * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] + e6 * k6[i] +
                              e7 * k7[i]);
      const double sc = control.atol + control.rtol * std::max(std::abs(y[i]), std::abs(y1[i]));
      err += (ei / sc) * (ei / sc);
      finite = finite && std::isfinite(y1[i]) && std::isfinite(ei);
    }
    err = std::sqrt(err / N);

    if (!finite) {
      // Shrink hard and retry; a persistently non-finite field ends the run.
      ++out.rejected;
      h *= 0.1;
      if (h < std::max(control.min_step, 1e-300)) {
        out.reason = StopReason::NonFinite;
        break;
      }
      continue;
    }

    if (err <= 1.0) {
      dense.x0 = x;
      dense.h = hs;
      for (std::size_t i = 0; i < N; ++i) {
        const double ydiff = y1[i] - y[i];
        const double bspl = hs * k1[i] - ydiff;
        dense.coeff[0][i] = y[i];
        dense.coeff[1][i] = ydiff;
        dense.coeff[2][i] = bspl;
        dense.coeff[3][i] = ydiff - hs * k7[i] - bspl;
        dense.coeff[4][i] =
            hs * (d1 * k1[i] + d3 * k3[i] + d4 * k4[i] + d5 * k5[i] + d6 * k6[i] + d7 * k7[i]);
      }
      x = last ? x_end : x + hs;
      y = y1;
      k1 = k7;
      ++out.steps;
      out.x = x;
      out.y = y;
      if (!observe(static_cast<const DenseStep<N>&>(dense), static_cast<const State<N>&>(y))) {
        out.reason = StopReason::Observer;
        break;
      }
      if (last) {
        out.reason = StopReason::ReachedEnd;
        break;
      }
      const double factor = err == 0.0 ? 5.0 : std::clamp(0.9 * std::pow(err, -0.2), 0.2, 5.0);
      h = std::min(h * factor, control.max_step);
    } else {
      ++out.rejected;
      h *= std::clamp(0.9 * std::pow(err, -0.2), 0.1, 1.0);
    }
  }
  return out;
}

/// Convenience overload without an observer.
template <std::size_t N, class Rhs>
IntegrationOutcome<N> dormand_prince(Rhs&& rhs, double x0, State<N> y0, double x_end,
                                     const StepControl& control = {}) {
  return dormand_prince<N>(std::forward<Rhs>(rhs), x0, y0, x_end, control,
                           [](const DenseStep<N>&, const State<N>&) { return true; });
}

}  // namespace mcfsol::numerics

#pragma once

#include <functional>
#include <limits>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace mcfsol {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

/// Open interval (lo, hi); either end may be infinite.
struct Interval {
  double lo = -kInf;
  double hi = kInf;

  bool contains(double x) const { return x > lo && x < hi; }
  bool contains_closed(double x) const { return x >= lo && x <= hi; }
  double width() const { return hi - lo; }
};

/// h and its first two derivatives at one point of the base interval.
struct WarpSample {
  double t = 0.0;
  double h = 0.0;
  double dh = 0.0;
  double d2h = 0.0;
};

/// The warping function of I x_h P and its first two derivatives.
struct WarpingProfile {
  std::function<double(double)> evaluate;
  std::function<double(double)> d1;
  std::function<double(double)> d2;
  Interval interval;
};

enum class SpaceKind {
  EuclideanCone,          // h(t) = t,       fiber S^m
  HyperbolicHorosphere,   // h(t) = e^t,     fiber R^m
  HyperbolicHypersphere,  // h(t) = cosh t,  fiber H^m
  SphereCone,             // h(t) = sin t,   fiber S^m
  Product,                // h(t) = h0,      fiber flat
  Schwarzschild,          // h(t) = r(t),    see SchwarzschildParams
  CustomTable,            // monotone cubic through user samples
};

std::string to_string(SpaceKind kind);

enum class SchwarzschildFamily { Plain, AntiDeSitter, ReissnerNordstrom };

std::string to_string(SchwarzschildFamily family);

struct SchwarzschildParams {
  int m = 3;             // fiber dimension
  double mass = 0.5;
  SchwarzschildFamily family = SchwarzschildFamily::Plain;
  int kbar = 0;          // fiber topology for the anti-de Sitter family: +1, 0, -1
  double charge = 0.0;   // Reissner-Nordstrom only
};

/// Base points of the flow parameter s(t) and of the potential eta_bar(t).
/// Infinite anchors are only accepted where the integral converges in closed
/// form (s for horospheres at +inf, eta_bar for horospheres at -inf).
struct Anchors {
  double s_base = 0.0;
  double eta_base = 0.0;
};

namespace detail {
struct SpaceModel;
}

class AmbientSpace;
struct SchwarzschildParams;
AmbientSpace make_schwarzschild(const SchwarzschildParams& params);

/// Immutable warped-product ambient space I x_h P^m. Copies share state.
class AmbientSpace {
 public:
  static AmbientSpace euclidean_cone(int m);
  static AmbientSpace hyperbolic_horosphere(int m);
  static AmbientSpace hyperbolic_hypersphere(int m);
  static AmbientSpace sphere_cone(int m);
  static AmbientSpace product(int m, double h0 = 1.0);
  static AmbientSpace schwarzschild(const SchwarzschildParams& params);
  /// Monotone cubic interpolation of (t, h) samples; t strictly increasing.
  static AmbientSpace from_table(int m, std::vector<double> t, std::vector<double> h,
                                 std::optional<double> fiber_curvature = std::nullopt);

  /// Same space with both anchors moved to the finite base point t0.
  AmbientSpace with_base_point(double t0) const;
  /// Same space with a different working window (clamped to the interval).
  AmbientSpace with_window(double lo, double hi) const;

  SpaceKind kind() const;
  int dim() const;
  const WarpingProfile& warping() const;
  std::optional<double> fiber_curvature() const;
  const std::optional<SchwarzschildParams>& schwarzschild_params() const;
  Interval interval() const;
  /// Finite window used wherever an infinite interval has to be sampled.
  Interval working_window() const;
  Anchors anchors() const;
  std::string description() const;

  /// h, h', h'' at t (t inside the closure of the working window).
  WarpSample sample(double t) const;

  // Schwarzschild family.
  double potential_V(double r) const;
  double potential_dV(double r) const;
  double horizon_radius() const;
  double t_of_r(double r) const;
  double r_of_t(double t) const;

  /// s(t) = integral of 1/h from the s anchor to t.
  double flow_param_s(double t) const;
  double t_of_s(double s) const;
  /// Image of the working window under s.
  Interval s_window() const;
  /// Warp sample at the point with flow parameter s.
  WarpSample sample_at_s(double s) const;

  /// eta_bar(t) = integral of h from the eta anchor to t.
  double eta_bar(double t) const;

 private:
  friend AmbientSpace make_schwarzschild(const SchwarzschildParams& params);
  explicit AmbientSpace(std::shared_ptr<const detail::SpaceModel> model);
  std::shared_ptr<const detail::SpaceModel> model_;
};

/// Schwarzschild, anti-de Sitter Schwarzschild or Reissner-Nordstrom space.
AmbientSpace make_schwarzschild(const SchwarzschildParams& params);

}  // namespace mcfsol

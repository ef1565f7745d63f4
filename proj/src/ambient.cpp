#include "mcfsol/ambient.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <sstream>

#include "mcfsol/error.hpp"
#include "mcfsol/numerics/interp.hpp"
#include "mcfsol/numerics/quadrature.hpp"
#include "mcfsol/numerics/roots.hpp"

namespace mcfsol {

std::string to_string(SpaceKind kind) {
  switch (kind) {
    case SpaceKind::EuclideanCone: return "euclidean-cone";
    case SpaceKind::HyperbolicHorosphere: return "hyperbolic-horo";
    case SpaceKind::HyperbolicHypersphere: return "hyperbolic-hyper";
    case SpaceKind::SphereCone: return "sphere-cone";
    case SpaceKind::Product: return "product";
    case SpaceKind::Schwarzschild: return "schwarzschild";
    case SpaceKind::CustomTable: return "table";
  }
  return "unknown";
}

std::string to_string(SchwarzschildFamily family) {
  switch (family) {
    case SchwarzschildFamily::Plain: return "schwarzschild";
    case SchwarzschildFamily::AntiDeSitter: return "ads";
    case SchwarzschildFamily::ReissnerNordstrom: return "rn";
  }
  return "unknown";
}

namespace detail {

// Backend for one warping function. S is an antiderivative of 1/h and E an
// antiderivative of h, each with a fixed natural origin; anchors are applied
// on top by SpaceModel.
class WarpCore {
 public:
  virtual ~WarpCore() = default;
  virtual WarpSample sample(double t) const = 0;
  // Both accept infinite t where the limit exists and return +-inf otherwise.
  virtual double S(double t) const = 0;
  virtual double E(double t) const = 0;
  virtual double S_inverse(double sigma) const = 0;
  virtual WarpSample sample_at_S(double sigma) const { return sample(S_inverse(sigma)); }
};

namespace {

constexpr double kPi = std::numbers::pi;

class ProductCore final : public WarpCore {
 public:
  explicit ProductCore(double h0) : h0_(h0) {}
  WarpSample sample(double t) const override { return {t, h0_, 0.0, 0.0}; }
  double S(double t) const override { return t / h0_; }
  double E(double t) const override { return h0_ * t; }
  double S_inverse(double sigma) const override { return sigma * h0_; }

 private:
  double h0_;
};

class EuclideanConeCore final : public WarpCore {
 public:
  WarpSample sample(double t) const override { return {t, t, 1.0, 0.0}; }
  double S(double t) const override { return t <= 0.0 ? -kInf : std::log(t); }
  double E(double t) const override { return 0.5 * t * t; }
  double S_inverse(double sigma) const override { return std::exp(sigma); }
};

class HorosphereCore final : public WarpCore {
 public:
  WarpSample sample(double t) const override {
    const double e = std::exp(t);
    return {t, e, e, e};
  }
  double S(double t) const override { return -std::exp(-t); }
  double E(double t) const override { return std::exp(t); }
  double S_inverse(double sigma) const override {
    if (!(sigma < 0.0)) return kInf;
    return -std::log(-sigma);
  }
};

class HypersphereCore final : public WarpCore {
 public:
  WarpSample sample(double t) const override {
    return {t, std::cosh(t), std::sinh(t), std::cosh(t)};
  }
  // Gudermannian function.
  double S(double t) const override { return 2.0 * std::atan(std::tanh(0.5 * t)); }
  double E(double t) const override { return std::sinh(t); }
  double S_inverse(double sigma) const override {
    if (sigma <= -0.5 * kPi) return -kInf;
    if (sigma >= 0.5 * kPi) return kInf;
    return 2.0 * std::atanh(std::tan(0.5 * sigma));
  }
};

class SphereConeCore final : public WarpCore {
 public:
  WarpSample sample(double t) const override {
    return {t, std::sin(t), std::cos(t), -std::sin(t)};
  }
  double S(double t) const override {
    if (t <= 0.0) return -kInf;
    if (t >= kPi) return kInf;
    return std::log(std::tan(0.5 * t));
  }
  double E(double t) const override { return -std::cos(t); }
  double S_inverse(double sigma) const override { return 2.0 * std::atan(std::exp(sigma)); }
};

class TableCore final : public WarpCore {
 public:
  TableCore(std::vector<double> t, std::vector<double> h) : spline_(std::move(t), std::move(h)) {
    auto xs = spline_.x();
    lo_ = xs.front();
    hi_ = xs.back();
    // Cumulative primitives at the knots make later lookups local.
    cum_s_.assign(xs.size(), 0.0);
    cum_e_.assign(xs.size(), 0.0);
    for (std::size_t i = 1; i < xs.size(); ++i) {
      cum_s_[i] = cum_s_[i - 1] + local_S(xs[i - 1], xs[i]);
      cum_e_[i] = cum_e_[i - 1] + local_E(xs[i - 1], xs[i]);
    }
  }

  WarpSample sample(double t) const override {
    check(t);
    return {t, spline_(t), spline_.derivative(t), spline_.second_derivative(t)};
  }
  double S(double t) const override {
    check(t);
    const std::size_t k = knot(t);
    return cum_s_[k] + local_S(spline_.x()[k], t);
  }
  double E(double t) const override {
    check(t);
    const std::size_t k = knot(t);
    return cum_e_[k] + local_E(spline_.x()[k], t);
  }
  double S_inverse(double sigma) const override {
    if (sigma < cum_s_.front() || sigma > cum_s_.back()) {
      fail(ErrorCode::OutOfDomain, "flow parameter outside the tabulated range");
    }
    auto it = std::upper_bound(cum_s_.begin(), cum_s_.end(), sigma);
    std::size_t k = it == cum_s_.begin() ? 0 : static_cast<std::size_t>(it - cum_s_.begin()) - 1;
    k = std::min(k, cum_s_.size() - 2);
    const double a = spline_.x()[k], b = spline_.x()[k + 1];
    auto fdf = [&](double t) {
      return std::pair{cum_s_[k] + local_S(a, t) - sigma, 1.0 / spline_(t)};
    };
    const double guess = a + (b - a) * (sigma - cum_s_[k]) / (cum_s_[k + 1] - cum_s_[k]);
    return numerics::safeguarded_newton(fdf, a, b, guess, 1e-15 * std::max(1.0, std::abs(b)));
  }

 private:
  void check(double t) const {
    if (!(t >= lo_ && t <= hi_)) fail(ErrorCode::OutOfDomain, "t outside the tabulated samples");
  }
  std::size_t knot(double t) const {
    auto xs = spline_.x();
    auto it = std::upper_bound(xs.begin(), xs.end(), t);
    std::size_t k = it == xs.begin() ? 0 : static_cast<std::size_t>(it - xs.begin()) - 1;
    return std::min(k, xs.size() - 2);
  }
  double local_S(double a, double b) const {
    return numerics::integrate([&](double x) { return 1.0 / spline_(x); }, a, b, 1e-15, 1e-14)
        .value;
  }
  double local_E(double a, double b) const {
    return numerics::integrate([&](double x) { return spline_(x); }, a, b, 1e-15, 1e-14).value;
  }

  numerics::MonotoneCubic spline_;
  double lo_ = 0.0, hi_ = 0.0;
  std::vector<double> cum_s_, cum_e_;
};

}  // namespace

// Schwarzschild-type potential V and the coordinate t(r) = int dr / sqrt(V).
// Everything runs in tau with r = r0 + tau^2 so that the integrands
// 2 tau / sqrt(V) w(r) stay smooth at the horizon.
class HorizonChart {
 public:
  enum Column { kT = 0, kS = 1, kE = 2 };

  explicit HorizonChart(const SchwarzschildParams& p) : p_(p) {
    mm_ = p.m - 1.0;
    r0_ = find_horizon();
    if (p_.family == SchwarzschildFamily::ReissnerNordstrom) {
      inner_pow_ = p_.charge * p_.charge / std::pow(r0_, mm_);
    }
    build_table();
  }

  double r0() const { return r0_; }

  double V(double r) const {
    if (r > r0_) return V_offset(r - r0_);
    return V_direct(r);
  }

  double dV(double r) const {
    const double m = p_.m;
    double d = 2.0 * p_.mass * mm_ * std::pow(r, -m);
    if (p_.family == SchwarzschildFamily::AntiDeSitter) d += 2.0 * r;
    if (p_.family == SchwarzschildFamily::ReissnerNordstrom) {
      d -= p_.charge * p_.charge * 2.0 * mm_ * std::pow(r, 1.0 - 2.0 * m);
    }
    return d;
  }

  double column_at(Column c, double tau) const {
    if (tau <= 0.0) return 0.0;
    const std::size_t k = cell(tau);
    return cols_[c][k] + piece(c, tau_[k], tau);
  }

  double tau_of(Column c, double value) const {
    if (value <= 0.0) return 0.0;
    const auto& col = cols_[c];
    const std::size_t n = tau_.size();
    if (value > col[n - 1]) return tau_beyond(c, value);
    auto it = std::upper_bound(col.begin(), col.end(), value);
    std::size_t k = static_cast<std::size_t>(it - col.begin()) - 1;
    k = std::min(k, n - 2);
    const double a = tau_[k], b = tau_[k + 1];
    // Hermite guess of the inverse from node values and slopes.
    const double ga = weight(c, a), gb = weight(c, b);
    const double guess =
        numerics::hermite(col[k], col[k + 1], a, b, 1.0 / ga, 1.0 / gb, value);
    auto fdf = [&](double tau) {
      return std::pair{col[k] + piece(c, a, tau) - value, weight(c, tau)};
    };
    return numerics::safeguarded_newton(fdf, a, b, std::clamp(guess, a, b),
                                        4e-16 * std::max(1.0, b));
  }

  double t_window_hi() const {
    const double scale = p_.family == SchwarzschildFamily::AntiDeSitter ? 1e4 : 100.0;
    return column_at(kT, std::sqrt(scale * std::max(1.0, r0_)));
  }

  // Limit of a column as tau -> infinity (finite only for convergent cases).
  double column_limit(Column c) const {
    const std::size_t n = tau_.size();
    const double tail = numerics::integrate_to_infinity(
                            [&](double tau) { return weight(c, tau); }, tau_[n - 1],
                            std::max(1.0, tau_[n - 1]), 1e-15, 1e-13)
                            .value;
    return cols_[c][n - 1] + tail;
  }

 private:
  double V_direct(double r) const {
    double v = 1.0 - 2.0 * p_.mass * std::pow(r, -mm_);
    if (p_.family == SchwarzschildFamily::AntiDeSitter) v += p_.kbar - 1.0 + r * r;
    if (p_.family == SchwarzschildFamily::ReissnerNordstrom) {
      v += p_.charge * p_.charge * std::pow(r, -2.0 * mm_);
    }
    return v;
  }

  // V(r0 + delta) factored through the horizon to avoid cancellation.
  double V_offset(double delta) const {
    const double ratio_pow = std::exp(-mm_ * std::log1p(delta / r0_));  // (r0/r)^(m-1)
    const double q = -std::expm1(-mm_ * std::log1p(delta / r0_));
    switch (p_.family) {
      case SchwarzschildFamily::Plain: return q;
      case SchwarzschildFamily::AntiDeSitter:
        return (p_.kbar + r0_ * r0_) * q + delta * (2.0 * r0_ + delta);
      case SchwarzschildFamily::ReissnerNordstrom: {
        const double r_pow = std::pow(r0_, mm_) / ratio_pow;  // r^(m-1)
        return q * (1.0 - inner_pow_ / r_pow);
      }
    }
    return q;
  }

  double find_horizon() const {
    auto v = [&](double r) { return V_direct(r); };
    double hi = 1.0;
    while (v(hi) <= 0.0) {
      hi *= 2.0;
      if (hi > 1e150) fail(ErrorCode::DegenerateHorizon, "no horizon found");
    }
    // Walk down until V turns non-positive; the first crossing is the outer root.
    double lo = hi;
    const double floor = hi * 1e-12;
    while (v(lo) > 0.0) {
      lo /= 1.01;
      if (lo < floor) fail(ErrorCode::DegenerateHorizon, "V has no simple positive root");
    }
    const double up = std::min(lo * 1.01, hi);
    double r = numerics::bisect(v, lo, up);
    // Newton polish on the direct formula.
    for (int i = 0; i < 3; ++i) {
      const double d = dV(r);
      if (d <= 0.0) break;
      const double step = v(r) / d;
      if (!std::isfinite(step) || std::abs(step) > 1e-6 * r) break;
      r -= step;
    }
    const double slope = dV(r);
    if (!(slope * r > 1e-8)) {
      fail(ErrorCode::DegenerateHorizon, "extremal horizon: V'(r0) vanishes");
    }
    return r;
  }

  double weight(Column c, double tau) const {
    const double delta = tau * tau;
    double g;
    if (tau < 1e-7 * std::sqrt(r0_)) {
      g = 2.0 / std::sqrt(dV(r0_));
    } else {
      g = 2.0 * tau / std::sqrt(V_offset(delta));
    }
    const double r = r0_ + delta;
    if (c == kS) return g / r;
    if (c == kE) return g * r;
    return g;
  }

  double piece(Column c, double a, double b) const {
    if (a == b) return 0.0;
    return numerics::integrate([&](double tau) { return weight(c, tau); }, a, b, 1e-16, 2e-15)
        .value;
  }

  std::size_t cell(double tau) const {
    auto it = std::upper_bound(tau_.begin(), tau_.end(), tau);
    std::size_t k = it == tau_.begin() ? 0 : static_cast<std::size_t>(it - tau_.begin()) - 1;
    return std::min(k, tau_.size() - 1);
  }

  double tau_beyond(Column c, double value) const {
    const std::size_t n = tau_.size();
    double a = tau_[n - 1];
    double base = cols_[c][n - 1];
    double b = 2.0 * a;
    double vb = base + piece(c, a, b);
    while (vb < value) {
      if (b > 1e100) fail(ErrorCode::OutOfDomain, "coordinate value beyond the reachable range");
      a = b;
      base = vb;
      b *= 2.0;
      vb = base + piece(c, a, b);
    }
    auto fdf = [&](double tau) { return std::pair{base + piece(c, a, tau) - value, weight(c, tau)}; };
    return numerics::safeguarded_newton(fdf, a, b, 0.5 * (a + b), 4e-16 * b);
  }

  void build_table() {
    constexpr std::size_t kNodes = 1024;
    constexpr double kStretch = 8.0;
    const double scale = p_.family == SchwarzschildFamily::AntiDeSitter ? 1e4 : 100.0;
    const double tau_max = std::sqrt(scale * std::max(1.0, r0_)) * 1.05;
    tau_.resize(kNodes + 1);
    for (std::size_t i = 0; i <= kNodes; ++i) {
      tau_[i] = tau_max * std::sinh(kStretch * static_cast<double>(i) / kNodes) /
                std::sinh(kStretch);
    }
    for (int c = 0; c < 3; ++c) {
      auto& col = cols_[c];
      col.assign(kNodes + 1, 0.0);
      for (std::size_t i = 1; i <= kNodes; ++i) {
        col[i] = col[i - 1] + piece(static_cast<Column>(c), tau_[i - 1], tau_[i]);
      }
    }
  }

  SchwarzschildParams p_;
  double mm_ = 2.0;
  double r0_ = 1.0;
  double inner_pow_ = 0.0;
  std::vector<double> tau_;
  std::array<std::vector<double>, 3> cols_;
};

namespace {

class SchwarzschildCore final : public WarpCore {
 public:
  explicit SchwarzschildCore(std::shared_ptr<const HorizonChart> chart) : chart_(std::move(chart)) {}

  WarpSample sample(double t) const override {
    return from_tau(t, chart_->tau_of(HorizonChart::kT, t));
  }
  double S(double t) const override {
    if (t == kInf) return chart_->column_limit(HorizonChart::kS);
    return chart_->column_at(HorizonChart::kS, chart_->tau_of(HorizonChart::kT, t));
  }
  double E(double t) const override {
    if (t == kInf) return kInf;
    return chart_->column_at(HorizonChart::kE, chart_->tau_of(HorizonChart::kT, t));
  }
  double S_inverse(double sigma) const override {
    return chart_->column_at(HorizonChart::kT, chart_->tau_of(HorizonChart::kS, sigma));
  }
  WarpSample sample_at_S(double sigma) const override {
    const double tau = chart_->tau_of(HorizonChart::kS, sigma);
    return from_tau(chart_->column_at(HorizonChart::kT, tau), tau);
  }

 private:
  WarpSample from_tau(double t, double tau) const {
    const double r = chart_->r0() + tau * tau;
    return {t, r, std::sqrt(std::max(0.0, chart_->V(r))), 0.5 * chart_->dV(r)};
  }
  std::shared_ptr<const HorizonChart> chart_;
};

}  // namespace

struct SpaceModel {
  SpaceKind kind = SpaceKind::Product;
  int m = 2;
  std::shared_ptr<const WarpCore> core;
  std::shared_ptr<const HorizonChart> chart;
  WarpingProfile profile;
  Interval window;
  Anchors anchors;
  std::optional<double> kappa;
  std::optional<SchwarzschildParams> sch;
  std::string label;
};

}  // namespace detail

namespace {

void check_dim(int m) {
  if (m < 1) fail(ErrorCode::InvalidParams, "fiber dimension must be at least 1");
}

std::shared_ptr<detail::SpaceModel> finish(std::shared_ptr<detail::SpaceModel> model,
                                           Interval interval) {
  auto core = model->core;
  model->profile.interval = interval;
  model->profile.evaluate = [core](double t) { return core->sample(t).h; };
  model->profile.d1 = [core](double t) { return core->sample(t).dh; };
  model->profile.d2 = [core](double t) { return core->sample(t).d2h; };
  return model;
}

std::string format_number(double x) {
  std::ostringstream os;
  os.precision(17);
  os << x;
  return os.str();
}

}  // namespace

AmbientSpace::AmbientSpace(std::shared_ptr<const detail::SpaceModel> model)
    : model_(std::move(model)) {}

AmbientSpace AmbientSpace::euclidean_cone(int m) {
  check_dim(m);
  auto model = std::make_shared<detail::SpaceModel>();
  model->kind = SpaceKind::EuclideanCone;
  model->m = m;
  model->core = std::make_shared<detail::EuclideanConeCore>();
  model->window = {1e-6, 1e6};
  model->anchors = {1.0, 0.0};
  model->kappa = 1.0;
  model->label = "euclidean cone h(t)=t";
  return AmbientSpace(finish(model, {0.0, kInf}));
}

AmbientSpace AmbientSpace::hyperbolic_horosphere(int m) {
  check_dim(m);
  auto model = std::make_shared<detail::SpaceModel>();
  model->kind = SpaceKind::HyperbolicHorosphere;
  model->m = m;
  model->core = std::make_shared<detail::HorosphereCore>();
  model->window = {-30.0, 30.0};
  model->anchors = {kInf, -kInf};
  model->kappa = 0.0;
  model->label = "hyperbolic space, horosphere foliation h(t)=e^t";
  return AmbientSpace(finish(model, {-kInf, kInf}));
}

AmbientSpace AmbientSpace::hyperbolic_hypersphere(int m) {
  check_dim(m);
  auto model = std::make_shared<detail::SpaceModel>();
  model->kind = SpaceKind::HyperbolicHypersphere;
  model->m = m;
  model->core = std::make_shared<detail::HypersphereCore>();
  model->window = {-30.0, 30.0};
  model->anchors = {0.0, 0.0};
  model->kappa = -1.0;
  model->label = "hyperbolic space, hypersphere foliation h(t)=cosh t";
  return AmbientSpace(finish(model, {-kInf, kInf}));
}

AmbientSpace AmbientSpace::sphere_cone(int m) {
  check_dim(m);
  auto model = std::make_shared<detail::SpaceModel>();
  model->kind = SpaceKind::SphereCone;
  model->m = m;
  model->core = std::make_shared<detail::SphereConeCore>();
  model->window = {1e-6, std::numbers::pi - 1e-6};
  model->anchors = {0.5 * std::numbers::pi, 0.0};
  model->kappa = 1.0;
  model->label = "round sphere h(t)=sin t";
  return AmbientSpace(finish(model, {0.0, std::numbers::pi}));
}

AmbientSpace AmbientSpace::product(int m, double h0) {
  check_dim(m);
  if (!(h0 > 0.0) || !std::isfinite(h0)) fail(ErrorCode::InvalidParams, "h0 must be positive");
  auto model = std::make_shared<detail::SpaceModel>();
  model->kind = SpaceKind::Product;
  model->m = m;
  model->core = std::make_shared<detail::ProductCore>(h0);
  model->window = {-1e6, 1e6};
  model->anchors = {0.0, 0.0};
  model->kappa = 0.0;
  model->label = "product h(t)=" + format_number(h0);
  return AmbientSpace(finish(model, {-kInf, kInf}));
}

AmbientSpace AmbientSpace::schwarzschild(const SchwarzschildParams& params) {
  return make_schwarzschild(params);
}

AmbientSpace make_schwarzschild(const SchwarzschildParams& params) {
  if (params.m < 2) fail(ErrorCode::InvalidParams, "m must be at least 2");
  if (!(params.mass > 0.0) || !std::isfinite(params.mass)) {
    fail(ErrorCode::InvalidParams, "mass must be positive");
  }
  SchwarzschildParams p = params;
  if (p.family == SchwarzschildFamily::AntiDeSitter) {
    if (p.kbar < -1 || p.kbar > 1) fail(ErrorCode::InvalidParams, "kbar must be -1, 0 or 1");
  } else {
    p.kbar = 0;
  }
  if (p.family == SchwarzschildFamily::ReissnerNordstrom) {
    if (!std::isfinite(p.charge) || std::abs(p.charge) > p.mass) {
      fail(ErrorCode::InvalidParams, "|charge| must not exceed mass");
    }
    if (std::abs(p.charge) == p.mass) {
      fail(ErrorCode::DegenerateHorizon, "extremal horizon: |charge| = mass gives a double root");
    }
  } else {
    p.charge = 0.0;
  }
  auto chart = std::make_shared<const detail::HorizonChart>(p);
  auto model = std::make_shared<detail::SpaceModel>();
  model->kind = SpaceKind::Schwarzschild;
  model->m = p.m;
  model->chart = chart;
  model->core = std::make_shared<detail::SchwarzschildCore>(chart);
  model->window = {1e-6, chart->t_window_hi()};
  model->anchors = {0.0, 0.0};
  model->sch = p;
  std::string name = p.family == SchwarzschildFamily::Plain       ? "Schwarzschild"
                     : p.family == SchwarzschildFamily::AntiDeSitter ? "ADS-Schwarzschild"
                                                                     : "Reissner-Nordstrom";
  model->label = name + " m=" + std::to_string(p.m) + " mass=" + format_number(p.mass);
  if (p.family == SchwarzschildFamily::AntiDeSitter) model->label += " kbar=" + std::to_string(p.kbar);
  if (p.family == SchwarzschildFamily::ReissnerNordstrom) {
    model->label += " charge=" + format_number(p.charge);
  }
  return AmbientSpace(finish(model, {0.0, kInf}));
}

AmbientSpace AmbientSpace::from_table(int m, std::vector<double> t, std::vector<double> h,
                                      std::optional<double> fiber_curvature) {
  check_dim(m);
  if (t.size() != h.size()) fail(ErrorCode::InvalidParams, "t and h columns differ in length");
  if (t.size() < 3) fail(ErrorCode::InvalidParams, "table needs at least 3 samples");
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (!std::isfinite(t[i]) || !std::isfinite(h[i])) {
      fail(ErrorCode::InvalidParams, "table contains non-finite values");
    }
    if (!(h[i] > 0.0)) fail(ErrorCode::InvalidParams, "warping function must be positive");
    if (i > 0 && !(t[i] > t[i - 1])) {
      fail(ErrorCode::InvalidParams, "table t values must be strictly increasing");
    }
  }
  const double lo = t.front(), hi = t.back();
  auto model = std::make_shared<detail::SpaceModel>();
  model->kind = SpaceKind::CustomTable;
  model->m = m;
  model->core = std::make_shared<detail::TableCore>(std::move(t), std::move(h));
  model->window = {lo, hi};
  model->anchors = {0.5 * (lo + hi), 0.5 * (lo + hi)};
  model->kappa = fiber_curvature;
  model->label = "tabulated warping on [" + format_number(lo) + ", " + format_number(hi) + "]";
  return AmbientSpace(finish(model, {lo, hi}));
}

AmbientSpace AmbientSpace::with_base_point(double t0) const {
  if (!std::isfinite(t0) || !model_->profile.interval.contains_closed(t0) ||
      (!model_->profile.interval.contains(t0) && model_->kind != SpaceKind::Schwarzschild &&
       model_->kind != SpaceKind::CustomTable)) {
    fail(ErrorCode::OutOfDomain, "base point outside the interval");
  }
  auto copy = std::make_shared<detail::SpaceModel>(*model_);
  copy->anchors = {t0, t0};
  return AmbientSpace(copy);
}

AmbientSpace AmbientSpace::with_window(double lo, double hi) const {
  const Interval iv = model_->profile.interval;
  lo = std::max(lo, iv.lo);
  hi = std::min(hi, iv.hi);
  if (!(lo < hi) || !std::isfinite(lo) || !std::isfinite(hi)) {
    fail(ErrorCode::InvalidParams, "working window must be a finite nonempty interval");
  }
  auto copy = std::make_shared<detail::SpaceModel>(*model_);
  copy->window = {lo, hi};
  return AmbientSpace(copy);
}

SpaceKind AmbientSpace::kind() const { return model_->kind; }
int AmbientSpace::dim() const { return model_->m; }
const WarpingProfile& AmbientSpace::warping() const { return model_->profile; }
std::optional<double> AmbientSpace::fiber_curvature() const { return model_->kappa; }
const std::optional<SchwarzschildParams>& AmbientSpace::schwarzschild_params() const {
  return model_->sch;
}
Interval AmbientSpace::interval() const { return model_->profile.interval; }
Interval AmbientSpace::working_window() const { return model_->window; }
Anchors AmbientSpace::anchors() const { return model_->anchors; }
std::string AmbientSpace::description() const { return model_->label; }

namespace {

void require_point(const detail::SpaceModel& model, double t) {
  const Interval iv = model.profile.interval;
  const bool closed_ok = model.kind == SpaceKind::CustomTable;
  const bool inside = closed_ok ? iv.contains_closed(t) : iv.contains(t);
  if (!std::isfinite(t) || !inside) {
    fail(ErrorCode::OutOfDomain, "t = " + format_number(t) + " outside the interval");
  }
}

const detail::HorizonChart& chart_of(const detail::SpaceModel& model) {
  if (!model.chart) fail(ErrorCode::WrongKind, "space is not of Schwarzschild type");
  return *model.chart;
}

}  // namespace

WarpSample AmbientSpace::sample(double t) const {
  require_point(*model_, t);
  return model_->core->sample(t);
}

double AmbientSpace::potential_V(double r) const {
  const auto& chart = chart_of(*model_);
  if (!(r > 0.0)) fail(ErrorCode::OutOfDomain, "r must be positive");
  return chart.V(r);
}

double AmbientSpace::potential_dV(double r) const {
  const auto& chart = chart_of(*model_);
  if (!(r > 0.0)) fail(ErrorCode::OutOfDomain, "r must be positive");
  return chart.dV(r);
}

double AmbientSpace::horizon_radius() const { return chart_of(*model_).r0(); }

double AmbientSpace::t_of_r(double r) const {
  const auto& chart = chart_of(*model_);
  if (!(r > chart.r0()) || !std::isfinite(r)) {
    fail(ErrorCode::OutOfDomain, "r must exceed the horizon radius");
  }
  return chart.column_at(detail::HorizonChart::kT, std::sqrt(r - chart.r0()));
}

double AmbientSpace::r_of_t(double t) const {
  const auto& chart = chart_of(*model_);
  if (!(t > 0.0) || !std::isfinite(t)) fail(ErrorCode::OutOfDomain, "t must be positive");
  const double tau = chart.tau_of(detail::HorizonChart::kT, t);
  return chart.r0() + tau * tau;
}

double AmbientSpace::flow_param_s(double t) const {
  require_point(*model_, t);
  const double base = model_->core->S(model_->anchors.s_base);
  if (!std::isfinite(base)) fail(ErrorCode::OutOfDomain, "s anchor gives a divergent integral");
  return model_->core->S(t) - base;
}

double AmbientSpace::t_of_s(double s) const {
  const double base = model_->core->S(model_->anchors.s_base);
  if (!std::isfinite(s)) fail(ErrorCode::OutOfDomain, "s must be finite");
  const double t = model_->core->S_inverse(s + base);
  require_point(*model_, t);
  return t;
}

Interval AmbientSpace::s_window() const {
  return {flow_param_s(model_->window.lo), flow_param_s(model_->window.hi)};
}

WarpSample AmbientSpace::sample_at_s(double s) const {
  const double base = model_->core->S(model_->anchors.s_base);
  if (!std::isfinite(s)) fail(ErrorCode::OutOfDomain, "s must be finite");
  const WarpSample w = model_->core->sample_at_S(s + base);
  require_point(*model_, w.t);
  return w;
}

double AmbientSpace::eta_bar(double t) const {
  require_point(*model_, t);
  const double base = model_->core->E(model_->anchors.eta_base);
  if (!std::isfinite(base)) fail(ErrorCode::OutOfDomain, "eta anchor gives a divergent integral");
  return model_->core->E(t) - base;
}

}  // namespace mcfsol

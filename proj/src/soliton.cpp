#include "mcfsol/soliton.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>

#include "mcfsol/error.hpp"
#include "mcfsol/numerics/roots.hpp"

namespace mcfsol {

SolitonProblem make_problem(const AmbientSpace& space, double c) {
  if (!std::isfinite(c)) fail(ErrorCode::InvalidParams, "soliton constant must be finite");
  return SolitonProblem{space, c, space.dim()};
}

namespace {

void check_problem(const SolitonProblem& problem) {
  if (problem.m != problem.space.dim()) {
    fail(ErrorCode::InvalidParams, "hypersurface dimension differs from the fiber dimension");
  }
}

double zeta_of(const SolitonProblem& p, const WarpSample& w) {
  return p.m * w.dh + p.c * w.h * w.h;
}

double scale_of(const SolitonProblem& p, const WarpSample& w) {
  return 1.0 + std::abs(p.m * w.dh) + std::abs(p.c) * w.h * w.h;
}

}  // namespace

double zeta(const SolitonProblem& problem, double t) {
  check_problem(problem);
  return zeta_of(problem, problem.space.sample(t));
}

double zeta_scale(const SolitonProblem& problem, double t) {
  return scale_of(problem, problem.space.sample(t));
}

std::string to_string(SliceVerdict verdict) {
  switch (verdict) {
    case SliceVerdict::None: return "none";
    case SliceVerdict::Tangential: return "one (tangential)";
    case SliceVerdict::Two: return "two";
    case SliceVerdict::Unavailable: return "unavailable";
  }
  return "unknown";
}

int SliceClosedForm::expected_roots() const {
  switch (verdict) {
    case SliceVerdict::None: return 0;
    case SliceVerdict::Tangential: return 1;
    case SliceVerdict::Two: return 2;
    case SliceVerdict::Unavailable: return -1;
  }
  return -1;
}

SliceClosedForm schwarzschild_slice_analysis(const SchwarzschildParams& params, double c) {
  if (params.m < 2 || !(params.mass > 0.0) || !std::isfinite(c)) {
    fail(ErrorCode::InvalidParams, "slice analysis needs m >= 2, mass > 0 and finite c");
  }
  SliceClosedForm out;
  out.params = params;
  out.c = c;
  constexpr double kTangential = 1e-12;
  auto classify = [&](double margin) {
    out.margin = margin;
    if (std::abs(margin) <= kTangential) {
      out.verdict = SliceVerdict::Tangential;
    } else {
      out.verdict = margin > 0.0 ? SliceVerdict::Two : SliceVerdict::None;
    }
  };

  if (c >= 0.0) {
    out.verdict = SliceVerdict::None;
    out.margin = -1.0;
    out.note = "zeta_c > 0 for c >= 0";
    return out;
  }

  const double m = params.m;
  const double mass = params.mass;
  const double c2 = c * c;
  switch (params.family) {
    case SchwarzschildFamily::Plain: {
      // Slices solve V(r) = c^2 r^4 / m^2; V - c^2 r^4 / m^2 peaks at r_star.
      const double r_star = std::pow(mass * (m - 1.0) * m * m / (2.0 * c2), 1.0 / (m + 3.0));
      const double r_c = std::pow(mass * (m + 3.0) / 2.0, 1.0 / (m - 1.0));
      out.r_star = r_star;
      out.r_threshold = r_c;
      classify(std::pow(r_star / r_c, m - 1.0) - 1.0);
      out.note = "two slices iff r_star > r_threshold";
      return out;
    }
    case SchwarzschildFamily::AntiDeSitter: {
      const double kbar = params.kbar;
      const double disc = (m + 1.0) * (m + 1.0) + 4.0 * kbar * (m - 1.0) * (c2 / (m * m)) * (m + 3.0);
      out.discriminant = disc;
      if (disc < 0.0) {
        out.verdict = SliceVerdict::None;
        out.margin = -1.0;
        out.note = "negative discriminant";
        return out;
      }
      const double root = std::sqrt(disc);
      const double base = (m * m / c2) / (2.0 * (m + 3.0));
      const double r_plus = std::sqrt(base * (m + 1.0 + root));
      const double x_minus = base * (m + 1.0 - root);
      out.r_star_plus = r_plus;
      out.r_star_minus = std::sqrt(std::max(0.0, x_minus));
      // Slice condition at the maximiser r_plus:
      //   mass (m-1) / r^(m+1) <= 2 c^2 r^2 / m^2 - 1.
      const double lhs = mass * (m - 1.0) / std::pow(r_plus, m + 1.0);
      const double rhs = 2.0 * c2 * r_plus * r_plus / (m * m) - 1.0;
      classify(rhs / lhs - 1.0);
      out.note = "two slices iff the condition holds strictly at r_star_plus";
      return out;
    }
    case SchwarzschildFamily::ReissnerNordstrom:
      out.verdict = SliceVerdict::Unavailable;
      out.margin = 0.0;
      out.note = "no closed form for the charged family with c < 0";
      return out;
  }
  return out;
}

namespace {

// Scan coordinate for the slice search: zeta as a function of u, with the
// map back to t applied only to the roots.
struct ScanAxis {
  double lo = 0.0, hi = 1.0;
  bool log_spacing = false;
  std::function<double(double)> zeta;
  std::function<double(double)> scale;
  std::function<double(double)> to_t;
  std::function<std::optional<double>(double)> to_r;
};

ScanAxis make_axis(const SolitonProblem& p, Interval window) {
  ScanAxis axis;
  const AmbientSpace& space = p.space;
  if (space.kind() == SpaceKind::Schwarzschild) {
    // Work in tau = sqrt(r - r0): zeta(r) = m sqrt(V) + c r^2 is explicit.
    const double r0 = space.horizon_radius();
    axis.lo = std::sqrt(space.r_of_t(window.lo) - r0);
    axis.hi = std::sqrt(space.r_of_t(window.hi) - r0);
    axis.zeta = [p, r0](double tau) {
      const double r = r0 + tau * tau;
      return p.m * std::sqrt(std::max(0.0, p.space.potential_V(r))) + p.c * r * r;
    };
    axis.scale = [p, r0](double tau) {
      const double r = r0 + tau * tau;
      return 1.0 + p.m * std::sqrt(std::max(0.0, p.space.potential_V(r))) + std::abs(p.c) * r * r;
    };
    axis.to_t = [space, r0](double tau) { return space.t_of_r(r0 + tau * tau); };
    axis.to_r = [r0](double tau) { return std::optional<double>(r0 + tau * tau); };
    return axis;
  }
  axis.lo = window.lo;
  axis.hi = window.hi;
  axis.log_spacing = window.lo > 0.0 && window.hi / window.lo > 1e3;
  axis.zeta = [p](double t) { return zeta_of(p, p.space.sample(t)); };
  axis.scale = [p](double t) { return scale_of(p, p.space.sample(t)); };
  axis.to_t = [](double t) { return t; };
  axis.to_r = [](double) { return std::optional<double>(); };
  return axis;
}

}  // namespace

SliceReport find_soliton_slices(const SolitonProblem& problem, const SliceScanOptions& options) {
  check_problem(problem);
  if (options.nodes < 3) fail(ErrorCode::InvalidParams, "slice scan needs at least 3 nodes");
  SliceReport report;
  report.nodes = options.nodes;
  Interval window = options.window.value_or(problem.space.working_window());
  const Interval iv = problem.space.interval();
  window.lo = std::max(window.lo, iv.lo);
  window.hi = std::min(window.hi, iv.hi);
  if (!(window.lo < window.hi) || !std::isfinite(window.lo) || !std::isfinite(window.hi)) {
    fail(ErrorCode::InvalidParams, "slice scan window must be finite and nonempty");
  }
  report.window = window;
  if (auto sch = problem.space.schwarzschild_params()) {
    report.closed_form = schwarzschild_slice_analysis(*sch, problem.c);
  }

  const ScanAxis axis = make_axis(problem, window);
  const int n = options.nodes;
  std::vector<double> u(n), z(n), sc(n);
  for (int i = 0; i < n; ++i) {
    const double frac = static_cast<double>(i) / (n - 1);
    u[i] = axis.log_spacing ? axis.lo * std::pow(axis.hi / axis.lo, frac)
                            : axis.lo + (axis.hi - axis.lo) * frac;
    z[i] = axis.zeta(u[i]);
    sc[i] = axis.scale(u[i]);
  }
  u.back() = axis.hi;

  double zmax = 0.0, smax = 0.0;
  for (int i = 0; i < n; ++i) {
    zmax = std::max(zmax, std::abs(z[i]));
    smax = std::max(smax, sc[i]);
  }
  if (zmax <= 1e-14 * smax) {
    report.degenerate = true;
    return report;
  }

  struct Found {
    double u;
    int multiplicity;
  };
  std::vector<Found> found;
  auto bisect_in = [&](double a, double b) { return numerics::bisect(axis.zeta, a, b); };

  for (int i = 0; i + 1 < n; ++i) {
    if (z[i] == 0.0) {
      found.push_back({u[i], 1});
    } else if (z[i] * z[i + 1] < 0.0) {
      found.push_back({bisect_in(u[i], u[i + 1]), 1});
    }
  }
  if (z[n - 1] == 0.0) found.push_back({u[n - 1], 1});

  // Dips: a local minimum of |zeta| without a sign change may hide a pair of
  // close roots or a tangential root.
  const double cell_floor = 1e-3 * std::abs(u[1] - u[0]);
  for (int i = 0; i < n; ++i) {
    if (z[i] == 0.0) continue;
    const bool left_ok = i == 0 || (std::abs(z[i]) < std::abs(z[i - 1]) && z[i] * z[i - 1] > 0.0);
    const bool right_ok =
        i == n - 1 || (std::abs(z[i]) <= std::abs(z[i + 1]) && z[i] * z[i + 1] > 0.0);
    if (!left_ok || !right_ok) continue;
    const double a = u[std::max(i - 1, 0)], b = u[std::min(i + 1, n - 1)];
    const double sign = z[i] > 0.0 ? 1.0 : -1.0;
    auto [um, zm] = numerics::golden_minimize([&](double x) { return sign * axis.zeta(x); }, a, b,
                                              1e-14 * std::max(1.0, std::abs(b)));
    if (um - axis.lo < cell_floor || axis.hi - um < cell_floor) continue;
    if (zm < 0.0) {
      found.push_back({bisect_in(a, um), 1});
      found.push_back({bisect_in(um, b), 1});
    } else if (zm < options.dip_tolerance * axis.scale(um)) {
      found.push_back({um, 2});
    }
  }

  std::sort(found.begin(), found.end(), [](const Found& x, const Found& y) { return x.u < y.u; });
  // Collapse pairs separated by a hump below the dip tolerance into one
  // tangential root; drop duplicates.
  std::vector<Found> merged;
  for (const auto& f : found) {
    if (!merged.empty()) {
      Found& last = merged.back();
      if (f.u - last.u <= 1e-14 * std::max(1.0, std::abs(f.u))) {
        last.multiplicity = std::max(last.multiplicity, f.multiplicity);
        continue;
      }
      if (f.u - last.u < 2.0 * std::abs(u[1] - u[0])) {
        const double mid = 0.5 * (f.u + last.u);
        const double sign = axis.zeta(mid) > 0.0 ? 1.0 : -1.0;
        auto [um, zm] = numerics::golden_minimize([&](double x) { return -sign * axis.zeta(x); },
                                                  last.u, f.u, 1e-15 * std::max(1.0, std::abs(f.u)));
        if (-zm < options.dip_tolerance * axis.scale(um)) {
          last = {um, 2};
          continue;
        }
      }
    }
    merged.push_back(f);
  }

  for (const auto& f : merged) {
    if (f.u <= axis.lo && !iv.contains(window.lo)) continue;
    SliceRoot root;
    root.t = axis.to_t(f.u);
    if (!iv.contains(root.t)) continue;
    root.multiplicity = f.multiplicity;
    root.r = axis.to_r(f.u);
    root.zeta = zeta(problem, root.t);
    root.scale = zeta_scale(problem, root.t);
    report.roots.push_back(root);
  }
  return report;
}

std::string to_string(FiberGeometry geometry) {
  switch (geometry) {
    case FiberGeometry::Flat: return "flat";
    case FiberGeometry::Hyperbolic: return "hyperbolic";
    case FiberGeometry::Spherical: return "spherical";
  }
  return "unknown";
}

FiberGeometry default_fiber(const AmbientSpace& space) {
  switch (space.kind()) {
    case SpaceKind::HyperbolicHorosphere:
    case SpaceKind::Product:
      return FiberGeometry::Flat;
    case SpaceKind::HyperbolicHypersphere:
      return FiberGeometry::Hyperbolic;
    case SpaceKind::EuclideanCone:
    case SpaceKind::SphereCone:
      return FiberGeometry::Spherical;
    case SpaceKind::Schwarzschild: {
      const auto& p = *space.schwarzschild_params();
      if (p.family == SchwarzschildFamily::AntiDeSitter && p.kbar <= 0) {
        return p.kbar == 0 ? FiberGeometry::Flat : FiberGeometry::Hyperbolic;
      }
      return FiberGeometry::Spherical;
    }
    case SpaceKind::CustomTable: {
      const auto kappa = space.fiber_curvature();
      if (!kappa || *kappa == 0.0) return FiberGeometry::Flat;
      return *kappa > 0.0 ? FiberGeometry::Spherical : FiberGeometry::Hyperbolic;
    }
  }
  return FiberGeometry::Flat;
}

double fiber_sphere_term(FiberGeometry geometry, int m, double rho) {
  const double k = m - 1.0;
  switch (geometry) {
    case FiberGeometry::Flat: return k / rho;
    case FiberGeometry::Hyperbolic: return k / std::tanh(rho);
    case FiberGeometry::Spherical: return k / std::tan(rho);
  }
  return k / rho;
}

double graph_forcing(const SolitonProblem& problem, double s) {
  return zeta_of(problem, problem.space.sample_at_s(s));
}

std::string to_string(ExactKind kind) {
  switch (kind) {
    case ExactKind::GrimReaperCurve: return "grim-reaper";
    case ExactKind::ShrinkerSphere: return "shrinker-sphere";
    case ExactKind::ShrinkerCylinder: return "shrinker-cylinder";
    case ExactKind::HorosphereSlice: return "horosphere-slice";
    case ExactKind::HypersphereSlice: return "hypersphere-slice";
    case ExactKind::BowlSeries: return "bowl-series";
  }
  return "unknown";
}

double ExactSoliton::param(const std::string& name) const {
  for (const auto& [key, value] : params) {
    if (key == name) return value;
  }
  fail(ErrorCode::InvalidParams, "exact solution has no parameter '" + name + "'");
}

std::pair<double, double> bowl_coefficients(const SolitonProblem& problem, double u0,
                                            FiberGeometry fiber) {
  check_problem(problem);
  const WarpSample w = problem.space.sample_at_s(u0);
  const double m = problem.m;
  const double f0 = zeta_of(problem, w);
  // df/ds = (m h'' + 2 c h h') dt/ds with dt/ds = h.
  const double df = (m * w.d2h + 2.0 * problem.c * w.h * w.dh) * w.h;
  const double a = f0 / (2.0 * m);
  const double curvature = fiber == FiberGeometry::Hyperbolic  ? 1.0
                           : fiber == FiberGeometry::Spherical ? -1.0
                                                               : 0.0;
  const double b = (8.0 * a * a * a + a * df - curvature * (m - 1.0) * 2.0 * a / 3.0) /
                   (4.0 * (m + 2.0));
  return {a, b};
}

namespace {

void require_samples(std::size_t n, std::size_t needed, const char* what) {
  if (n < needed) {
    fail(ErrorCode::InsufficientSamples,
         std::string(what) + " needs at least " + std::to_string(needed) + " samples");
  }
}

// d theta / d tau at interior sample i, theta the angle of the tangent.
double turning_rate(const CurveSamples& curve, std::size_t i) {
  const auto [ax, ay] = curve.tangent[i - 1];
  const auto [bx, by] = curve.tangent[i + 1];
  const double turn = std::atan2(ax * by - ay * bx, ax * bx + ay * by);
  return turn / (curve.tau[i + 1] - curve.tau[i - 1]);
}

void check_curve(const CurveSamples& curve) {
  require_samples(curve.tau.size(), 3, "curve residual");
  if (curve.point.size() != curve.tau.size() || curve.tangent.size() != curve.tau.size()) {
    fail(ErrorCode::InvalidParams, "curve sample arrays differ in length");
  }
}

}  // namespace

double translator_curve_residual(const CurveSamples& curve, double k) {
  check_curve(curve);
  double worst = 0.0;
  for (std::size_t i = 1; i + 1 < curve.tau.size(); ++i) {
    worst = std::max(worst, std::abs(turning_rate(curve, i) + k * curve.tangent[i].second));
  }
  return worst;
}

double shrinker_residual(const CurveSamples& curve, int curved_dims, double c) {
  check_curve(curve);
  double worst = 0.0;
  for (std::size_t i = 1; i + 1 < curve.tau.size(); ++i) {
    const auto [tx, ty] = curve.tangent[i];
    const double speed = std::hypot(tx, ty);
    const double kappa = turning_rate(curve, i) / speed;
    // Right-hand normal of a counterclockwise profile points outward.
    const double nx = ty / speed, ny = -tx / speed;
    const double support = curve.point[i].first * nx + curve.point[i].second * ny;
    worst = std::max(worst, std::abs(c * support + curved_dims * kappa));
  }
  return worst;
}

double radial_graph_residual(const SolitonProblem& problem, const RadialGraphSamples& graph) {
  check_problem(problem);
  const std::size_t n = graph.rho.size();
  require_samples(n, 3, "graph residual");
  if (graph.u.size() != n || graph.du.size() != n) {
    fail(ErrorCode::InvalidParams, "graph sample arrays differ in length");
  }
  double worst = 0.0;
  for (std::size_t i = 1; i + 1 < n; ++i) {
    const double rho = graph.rho[i];
    if (!(rho > 0.0)) continue;
    const double d2u = (graph.du[i + 1] - graph.du[i - 1]) / (graph.rho[i + 1] - graph.rho[i - 1]);
    const double du = graph.du[i];
    const double f = graph_forcing(problem, graph.u[i]);
    const double rhs = (1.0 + du * du) * (f - fiber_sphere_term(graph.fiber, problem.m, rho) * du);
    worst = std::max(worst, std::abs(d2u - rhs));
  }
  return worst;
}

ExactSoliton exact_solution(ExactKind kind, const ExactParams& p) {
  ExactSoliton out;
  out.kind = kind;
  const int n = p.samples;
  switch (kind) {
    case ExactKind::GrimReaperCurve: {
      if (p.k == 0.0 || !std::isfinite(p.k)) fail(ErrorCode::InvalidParams, "grim reaper needs k != 0");
      if (!(p.edge > 0.0) || p.edge >= 0.5 * std::numbers::pi) {
        fail(ErrorCode::InvalidParams, "grim reaper edge margin must lie in (0, pi/2)");
      }
      require_samples(static_cast<std::size_t>(std::max(n, 0)), 3, "grim reaper");
      const double k = p.k;
      const double half = (0.5 * std::numbers::pi - p.edge) / std::abs(k);
      for (int i = 0; i < n; ++i) {
        const double tau = -half + 2.0 * half * i / (n - 1);
        out.curve.tau.push_back(tau);
        out.curve.point.emplace_back(-std::log(std::cos(k * tau)) / k, tau);
        out.curve.tangent.emplace_back(std::tan(k * tau), 1.0);
      }
      out.params = {{"k", k}, {"half_width", half}};
      out.orientation = "left normal of (x'(tau), 1)";
      out.problem = make_problem(AmbientSpace::product(1, 1.0), k);
      return out;
    }
    case ExactKind::ShrinkerSphere:
    case ExactKind::ShrinkerCylinder: {
      if (!(p.c < 0.0)) fail(ErrorCode::InvalidParams, "shrinkers need c < 0");
      if (p.m < 1) fail(ErrorCode::InvalidParams, "m must be positive");
      require_samples(static_cast<std::size_t>(std::max(n, 0)), 3, "shrinker");
      const bool sphere = kind == ExactKind::ShrinkerSphere;
      const int dims = sphere ? p.m : p.sphere_dims;
      if (!sphere && (dims < 1 || dims > p.m)) {
        fail(ErrorCode::InvalidParams, "cylinder sphere dimension must lie in [1, m]");
      }
      const double radius = std::sqrt(dims / std::abs(p.c));
      for (int i = 0; i < n; ++i) {
        const double tau = 2.0 * std::numbers::pi * i / (n - 1);
        out.curve.tau.push_back(tau);
        out.curve.point.emplace_back(radius * std::cos(tau), radius * std::sin(tau));
        out.curve.tangent.emplace_back(-radius * std::sin(tau), radius * std::cos(tau));
      }
      out.params = {{"m", static_cast<double>(p.m)}, {"c", p.c}, {"radius", radius}};
      if (!sphere) out.params.emplace_back("k", static_cast<double>(dims));
      out.orientation = "outward";
      out.problem = make_problem(AmbientSpace::euclidean_cone(p.m), p.c);
      return out;
    }
    case ExactKind::HorosphereSlice: {
      if (!(p.c < 0.0)) fail(ErrorCode::InvalidParams, "horosphere slices need c < 0");
      if (p.m < 1) fail(ErrorCode::InvalidParams, "m must be positive");
      out.slices = {std::log(-p.m / p.c)};
      out.params = {{"m", static_cast<double>(p.m)}, {"c", p.c}, {"t", out.slices[0]}};
      out.orientation = "d/dt";
      out.problem = make_problem(AmbientSpace::hyperbolic_horosphere(p.m), p.c);
      return out;
    }
    case ExactKind::HypersphereSlice: {
      if (p.m < 1) fail(ErrorCode::InvalidParams, "m must be positive");
      if (std::abs(p.c) > 0.5 * p.m) {
        fail(ErrorCode::InvalidParams, "hypersphere slices need |c| <= m/2");
      }
      if (p.c == 0.0) {
        out.slices = {0.0};
      } else {
        // c x^2 + m x + c = 0 with x = sinh t.
        const double disc = std::sqrt(std::max(0.0, p.m * p.m - 4.0 * p.c * p.c));
        const double q = -0.5 * (p.m + disc);
        std::vector<double> xs = {q / p.c, p.c / q};
        std::sort(xs.begin(), xs.end());
        if (disc == 0.0) xs.resize(1);
        for (double x : xs) out.slices.push_back(std::asinh(x));
      }
      out.params = {{"m", static_cast<double>(p.m)}, {"c", p.c}};
      out.orientation = "d/dt";
      out.problem = make_problem(AmbientSpace::hyperbolic_hypersphere(p.m), p.c);
      return out;
    }
    case ExactKind::BowlSeries: {
      if (p.m < 1) fail(ErrorCode::InvalidParams, "m must be positive");
      if (!(p.rho_max > 0.0)) fail(ErrorCode::InvalidParams, "rho_max must be positive");
      require_samples(static_cast<std::size_t>(std::max(n, 0)), 3, "bowl series");
      SolitonProblem problem = make_problem(AmbientSpace::product(p.m, p.h0), p.c);
      const auto [a, b] = bowl_coefficients(problem, p.u0);
      out.graph.fiber = FiberGeometry::Flat;
      for (int i = 1; i <= n; ++i) {
        const double rho = p.rho_max * i / n;
        const double r2 = rho * rho;
        out.graph.rho.push_back(rho);
        out.graph.u.push_back(p.u0 + a * r2 + b * r2 * r2);
        out.graph.du.push_back(2.0 * a * rho + 4.0 * b * r2 * rho);
        out.graph.d2u.push_back(2.0 * a + 12.0 * b * r2);
      }
      out.params = {{"m", static_cast<double>(p.m)}, {"c", p.c}, {"h0", p.h0},
                    {"u0", p.u0},  {"a", a},  {"b", b}};
      out.orientation = "upward";
      out.problem = problem;
      return out;
    }
  }
  fail(ErrorCode::InvalidParams, "unknown exact solution kind");
}

double soliton_residual(const SolitonProblem& problem, const ExactSoliton& solution) {
  switch (solution.kind) {
    case ExactKind::GrimReaperCurve: {
      if (problem.space.kind() != SpaceKind::Product) {
        fail(ErrorCode::WrongKind, "grim reaper curves live in product spaces");
      }
      const double h0 = problem.space.sample(0.0).h;
      return translator_curve_residual(solution.curve, problem.c * h0);
    }
    case ExactKind::ShrinkerSphere:
      return shrinker_residual(solution.curve, problem.m, problem.c);
    case ExactKind::ShrinkerCylinder:
      return shrinker_residual(solution.curve, static_cast<int>(solution.param("k")), problem.c);
    case ExactKind::HorosphereSlice:
    case ExactKind::HypersphereSlice: {
      double worst = 0.0;
      for (double t : solution.slices) {
        worst = std::max(worst, std::abs(zeta(problem, t)) / zeta_scale(problem, t));
      }
      return worst;
    }
    case ExactKind::BowlSeries:
      return radial_graph_residual(problem, solution.graph);
  }
  return 0.0;
}

double soliton_residual(const ExactSoliton& solution) {
  if (!solution.problem) fail(ErrorCode::InvalidParams, "solution carries no problem");
  return soliton_residual(*solution.problem, solution);
}

}  // namespace mcfsol

#include "mcfsol/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <numbers>

#include "mcfsol/error.hpp"
#include "mcfsol/numerics/tridiagonal.hpp"

namespace mcfsol {

std::string to_string(StabilityTargetKind kind) {
  switch (kind) {
    case StabilityTargetKind::Slice: return "slice";
    case StabilityTargetKind::Equator: return "equator";
    case StabilityTargetKind::Horosphere: return "horosphere";
  }
  return "unknown";
}

std::string to_string(Boundary boundary) {
  switch (boundary) {
    case Boundary::Dirichlet: return "dirichlet";
    case Boundary::Neumann: return "neumann";
    case Boundary::Closed: return "closed";
  }
  return "unknown";
}

std::string to_string(GrowthKind kind) {
  return kind == GrowthKind::BallVolume ? "ball-volume" : "sphere-area";
}

std::function<double(double)> StabilityPotential::as_function() const {
  const double value = q;
  return [value](double) { return value; };
}

StabilityPotential stability_potential(const SolitonProblem& problem, const StabilityTarget& target) {
  const AmbientSpace& space = problem.space;
  const int m = problem.m;
  StabilityPotential out;
  out.target = target.kind;
  switch (target.kind) {
    case StabilityTargetKind::Slice:
      out.t0 = target.t0;
      break;
    case StabilityTargetKind::Equator:
      if (space.kind() != SpaceKind::SphereCone) fail(ErrorCode::WrongKind, "the equator needs a sphere cone");
      out.t0 = 0.5 * std::numbers::pi;
      break;
    case StabilityTargetKind::Horosphere:
      if (space.kind() != SpaceKind::HyperbolicHorosphere) {
        fail(ErrorCode::WrongKind, "horosphere targets need the horospherical model");
      }
      if (!(problem.c < 0.0)) fail(ErrorCode::OutOfDomain, "soliton horospheres need c < 0");
      out.t0 = std::log(-m / problem.c);
      break;
  }
  if (!space.interval().contains(out.t0)) fail(ErrorCode::OutOfDomain, "t0 outside the base interval");

  const WarpSample w = space.sample(out.t0);
  const double k = w.dh / w.h;
  out.second_fundamental_sq = m * k * k;
  out.ricci_normal = -m * w.d2h / w.h;
  out.drift_term = problem.c * w.dh;
  out.q = out.second_fundamental_sq + out.ricci_normal - out.drift_term;
  out.zeta = zeta(problem, out.t0);
  switch (space.kind()) {
    case SpaceKind::EuclideanCone:
    case SpaceKind::HyperbolicHorosphere:
    case SpaceKind::HyperbolicHypersphere:
    case SpaceKind::SphereCone:
    case SpaceKind::Product:
      out.constant_curvature_form = m * (*space.fiber_curvature() + w.dh * w.dh) / (w.h * w.h);
      break;
    default:
      break;
  }
  return out;
}

SLProblem SLProblem::constant(double q, Interval interval, Boundary boundary) {
  return SLProblem{[](double) { return 1.0; }, [q](double) { return q; }, interval, boundary};
}

namespace {

struct Discretization {
  std::vector<double> r;       // all nodes
  std::size_t first = 0;       // first unknown node
  std::vector<double> mass;    // M_ii for the unknowns
  numerics::SymmetricTridiagonal a;
};

void check_interval(const SLProblem& p) {
  if (!(p.interval.lo < p.interval.hi) || !std::isfinite(p.interval.lo) || !std::isfinite(p.interval.hi)) {
    fail(ErrorCode::InvalidParams, "the interval must be finite with a < b");
  }
  if (!p.v || !p.q) fail(ErrorCode::InvalidParams, "weight and potential must be set");
}

double weight_at(const SLProblem& p, double r) {
  const double v = p.v(r);
  if (!(v > 0.0) || !std::isfinite(v)) fail(ErrorCode::NonPositiveWeight, "weight must be positive and finite");
  return v;
}

// Finite volumes with midpoint weights and a lumped mass, symmetrised as
// M^{-1/2} K M^{-1/2}.
Discretization discretize(const SLProblem& p, int n) {
  check_interval(p);
  if (n < 16) fail(ErrorCode::InsufficientSamples, "grid_n must be at least 16");
  const double a = p.interval.lo, b = p.interval.hi, h = (b - a) / n;
  Discretization d;
  d.r.resize(n + 1);
  for (int i = 0; i <= n; ++i) d.r[i] = i == n ? b : a + i * h;
  std::vector<double> vmid(n);
  for (int i = 0; i < n; ++i) vmid[i] = weight_at(p, a + (i + 0.5) * h);

  const bool dirichlet = p.boundary == Boundary::Dirichlet;
  d.first = dirichlet ? 1 : 0;
  const std::size_t last = dirichlet ? n - 1 : n;
  const std::size_t size = last - d.first + 1;
  d.mass.resize(size);
  d.a.diag.resize(size);
  d.a.off.resize(size - 1);
  for (std::size_t j = 0; j < size; ++j) {
    const std::size_t i = d.first + j;
    const double wi = (i == 0 || i == static_cast<std::size_t>(n)) ? 0.5 : 1.0;
    d.mass[j] = weight_at(p, d.r[i]) * wi * h;
    const double left = i > 0 ? vmid[i - 1] : 0.0;
    const double right = i < static_cast<std::size_t>(n) ? vmid[i] : 0.0;
    d.a.diag[j] = (left + right) / (h * d.mass[j]) - p.q(d.r[i]);
  }
  for (std::size_t j = 0; j + 1 < size; ++j) {
    d.a.off[j] = -vmid[d.first + j] / (h * std::sqrt(d.mass[j] * d.mass[j + 1]));
  }
  for (double x : d.a.diag) {
    if (!std::isfinite(x)) fail(ErrorCode::InvalidParams, "potential must be finite on the grid");
  }
  return d;
}

}  // namespace

double lambda1_discrete(const SLProblem& problem, int n) { return discretize(problem, n).a.eigenvalue(0); }

SpectrumEstimate lambda1_sl(const SLProblem& problem, int grid_n) {
  if (grid_n < 16) fail(ErrorCode::InsufficientSamples, "grid_n must be at least 16");
  auto coarse = std::async(std::launch::async, [&] { return lambda1_discrete(problem, grid_n); });
  const Discretization fine = discretize(problem, 2 * grid_n);
  const double lambda = fine.a.eigenvalue(0);
  const std::vector<double> y = fine.a.eigenvector(lambda);

  SpectrumEstimate out;
  out.boundary = problem.boundary;
  out.grid_n = 2 * grid_n;
  out.lambda1 = lambda;
  out.lambda1_coarse = coarse.get();
  out.lambda1_extrapolated = (4.0 * lambda - out.lambda1_coarse) / 3.0;
  out.richardson_error = std::abs(lambda - out.lambda1_coarse) / 3.0;
  out.discrete_index = static_cast<int>(fine.a.count_below(0.0));
  out.r = fine.r;
  out.eigenfunction.assign(fine.r.size(), 0.0);
  double sum = 0.0;
  for (std::size_t j = 0; j < y.size(); ++j) {
    out.eigenfunction[fine.first + j] = y[j] / std::sqrt(fine.mass[j]);
    sum += y[j];
  }
  const double peak = *std::max_element(out.eigenfunction.begin(), out.eigenfunction.end(),
                                        [](double x, double z) { return std::abs(x) < std::abs(z); });
  const double scale = (sum < 0.0 ? -1.0 : 1.0) / std::abs(peak);
  for (double& z : out.eigenfunction) z *= scale;
  return out;
}

double rayleigh_quotient(const SLProblem& problem, const std::vector<double>& r, const std::vector<double>& phi) {
  check_interval(problem);
  if (r.size() != phi.size()) fail(ErrorCode::InvalidParams, "radii and samples differ in length");
  if (r.size() < 3) fail(ErrorCode::InsufficientSamples, "need at least 3 samples");
  const double slack = 1e-12 * (problem.interval.hi - problem.interval.lo);
  if (r.front() < problem.interval.lo - slack || r.back() > problem.interval.hi + slack) {
    fail(ErrorCode::OutOfDomain, "samples leave the interval");
  }
  double peak = 0.0;
  for (std::size_t i = 0; i < r.size(); ++i) {
    if (i > 0 && !(r[i] > r[i - 1])) fail(ErrorCode::InvalidParams, "radii must increase");
    if (!std::isfinite(phi[i])) fail(ErrorCode::InvalidParams, "test function must be finite");
    peak = std::max(peak, std::abs(phi[i]));
  }
  if (peak == 0.0) fail(ErrorCode::ZeroNorm, "test function vanishes");
  if (problem.boundary == Boundary::Dirichlet &&
      (std::abs(phi.front()) > 1e-10 * peak || std::abs(phi.back()) > 1e-10 * peak)) {
    fail(ErrorCode::InvalidParams, "test function must vanish at Dirichlet ends");
  }
  double energy = 0.0, potential = 0.0, norm = 0.0;
  for (std::size_t i = 0; i + 1 < r.size(); ++i) {
    const double dr = r[i + 1] - r[i];
    const double dphi = phi[i + 1] - phi[i];
    energy += weight_at(problem, 0.5 * (r[i] + r[i + 1])) * dphi * dphi / dr;
  }
  for (std::size_t i = 0; i < r.size(); ++i) {
    const double left = i > 0 ? r[i] - r[i - 1] : 0.0;
    const double right = i + 1 < r.size() ? r[i + 1] - r[i] : 0.0;
    const double w = 0.5 * (left + right) * weight_at(problem, r[i]) * phi[i] * phi[i];
    potential += problem.q(r[i]) * w;
    norm += w;
  }
  if (!(norm > 0.0)) fail(ErrorCode::ZeroNorm, "test function has zero weighted norm");
  return (energy - potential) / norm;
}

namespace {

struct LineFit {
  double slope = 0.0;
  double rms = 0.0;
};

LineFit least_squares(const std::vector<double>& x, const std::vector<double>& y) {
  const double n = static_cast<double>(x.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  LineFit fit;
  fit.slope = sxy / sxx;
  double ss = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double e = y[i] - my - fit.slope * (x[i] - mx);
    ss += e * e;
  }
  fit.rms = std::sqrt(ss / n);
  return fit;
}

}  // namespace

GrowthClassification growth_classify(const GrowthProfile& profile) {
  const Interval dom = profile.f.domain();
  const double lo = std::max(profile.r_min, dom.lo);
  const double hi = std::min(profile.r_max, dom.hi);
  if (!(lo > 0.0) || !(hi >= 1e3 * lo) || !std::isfinite(hi)) {
    fail(ErrorCode::InsufficientTail, "growth fits need three decades of radius");
  }
  GrowthClassification out;
  out.kind = profile.kind;
  out.tail = {hi / 10.0, hi};

  constexpr int kCheck = 1000;
  double prev = -kInf;
  for (int i = 0; i <= kCheck; ++i) {
    const double r = lo * std::pow(hi / lo, static_cast<double>(i) / kCheck);
    const double y = profile.f.log_value(r);
    if (!std::isfinite(y)) fail(ErrorCode::InvalidParams, "growth profile must be positive");
    if (y < prev) out.monotone = false;
    prev = y;
  }

  constexpr int kFit = 201;
  std::vector<double> logr(kFit), r(kFit), logf(kFit);
  for (int i = 0; i < kFit; ++i) {
    r[i] = out.tail.lo * std::pow(10.0, static_cast<double>(i) / (kFit - 1));
    if (i == kFit - 1) r[i] = out.tail.hi;
    logr[i] = std::log(r[i]);
    logf[i] = profile.f.log_value(r[i]);
  }
  const LineFit power = least_squares(logr, logf);
  const LineFit linear = least_squares(r, logf);
  out.degree = power.slope;
  out.degree_residual = power.rms;
  out.alpha_residual = linear.rms;
  out.exponential = linear.rms < 0.5 * power.rms && linear.slope > 0.0;
  out.subexponential = !out.exponential;
  out.alpha = out.exponential ? linear.slope : 0.0;
  out.brooks_higuchi_bound = 0.25 * out.alpha * out.alpha;

  // Ball volume degree: the sphere area grows one power slower.
  const double ball_degree = profile.kind == GrowthKind::BallVolume ? out.degree : out.degree + 1.0;
  const double tol = 1e-6 + 3.0 * power.rms;
  if (!out.exponential) {
    out.quadratic = ball_degree <= 2.0 + tol;
    out.subquadratic = ball_degree < 2.0 - tol;
  }
  out.parabolic_criterion = out.quadratic;
  return out;
}

}  // namespace mcfsol

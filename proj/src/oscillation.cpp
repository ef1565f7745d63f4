#include "mcfsol/oscillation.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "mcfsol/error.hpp"
#include "mcfsol/numerics/ode.hpp"
#include "mcfsol/numerics/quadrature.hpp"
#include "mcfsol/numerics/roots.hpp"

namespace mcfsol {

std::string to_string(OscillationCondition condition) {
  switch (condition) {
    case OscillationCondition::MeanDivergence: return "mean-divergence";
    case OscillationCondition::GapDivergence: return "gap-divergence";
    case OscillationCondition::Neither: return "neither";
  }
  return "unknown";
}

namespace {

double checked_weight(const EndProfile& p, double r) {
  const double v = p.v(r);
  if (!(v > 0.0) || !std::isfinite(v)) {
    std::ostringstream os;
    os << "v is not positive at r = " << r;
    fail(ErrorCode::ProfileSingularity, os.str());
  }
  return v;
}

// Log-log slope of f between two radii.
double log_slope(const RadialFunction& f, double r0, double r1) {
  return (f.log_value(r1) - f.log_value(r0)) / (std::log(r1) - std::log(r0));
}

}  // namespace

double reciprocal_tail(const EndProfile& profile, double r) {
  const RadialFunction& v = profile.v;
  if (auto closed = v.reciprocal_tail(r)) {
    if (std::isinf(*closed)) fail(ErrorCode::NonIntegrableTail, "1/v is not integrable at infinity");
    return *closed;
  }
  auto inv = [&](double s) { return 1.0 / checked_weight(profile, s); };
  if (v.kind() == RadialFunction::Kind::Table) {
    // Finite table: quadrature to its last radius, power-law extrapolation beyond.
    const Interval dom = v.domain();
    if (!dom.contains_closed(r)) fail(ErrorCode::OutOfDomain, "radius outside the profile table");
    const double k = log_slope(v, std::max(dom.lo, dom.hi / 10.0), dom.hi);
    if (k <= 1.0 + kDivergenceSlope) fail(ErrorCode::NonIntegrableTail, "1/v tail does not decay fast enough");
    const double body = numerics::integrate(inv, r, dom.hi).value;
    return body + dom.hi / (v(dom.hi) * (k - 1.0));
  }
  const double base = std::max(1.0, r);
  if (log_slope(v, 1e3 * base, 1e6 * base) <= 1.0 + kDivergenceSlope) {
    fail(ErrorCode::NonIntegrableTail, "1/v is not integrable at infinity");
  }
  const double scale = std::max(r, 1e-3);
  const double t1 = numerics::integrate_to_infinity(inv, r, scale).value;
  const double t2 = numerics::integrate_to_infinity(inv, r, 4.0 * scale).value;
  if (!(std::abs(t1 - t2) <= 1e-8 * std::abs(t1))) {
    fail(ErrorCode::InsufficientSamples, "tail quadrature of 1/v did not settle");
  }
  return t1;
}

double critical_curve(const EndProfile& profile, double r) {
  if (!(r >= profile.R)) fail(ErrorCode::OutOfDomain, "critical curve needs r >= R");
  const double x = 2.0 * checked_weight(profile, r) * reciprocal_tail(profile, r);
  return 1.0 / (x * x);
}

CauchySolution integrate_cauchy(const EndProfile& profile, double r_max, const CauchyOptions& options) {
  const double start = options.start.value_or(2.0 * profile.R);
  if (!std::isfinite(start) || !(r_max > start) || !std::isfinite(r_max)) {
    fail(ErrorCode::InvalidParams, "need a finite window with r_max > start");
  }
  if (options.samples < 2) fail(ErrorCode::InsufficientSamples, "need at least 2 output samples");
  checked_weight(profile, start);

  std::vector<double> breaks = profile.kinks;
  for (double k : profile.v.kinks()) breaks.push_back(k);
  for (double k : profile.A.kinks()) breaks.push_back(k);
  std::erase_if(breaks, [&](double x) { return !(x > start && x < r_max); });
  breaks.push_back(r_max);
  std::sort(breaks.begin(), breaks.end());
  breaks.erase(std::unique(breaks.begin(), breaks.end()), breaks.end());

  std::vector<double> grid(options.samples);
  const bool logarithmic = start > 0.0 && r_max / start > 100.0;
  for (int i = 0; i < options.samples; ++i) {
    const double f = static_cast<double>(i) / (options.samples - 1);
    grid[i] = logarithmic ? start * std::pow(r_max / start, f) : start + (r_max - start) * f;
  }
  grid.front() = start;
  grid.back() = r_max;

  CauchySolution out;
  out.start = start;
  out.r_max = r_max;
  out.r.push_back(start);
  out.z.push_back(options.z0);
  out.w.push_back(options.w0);
  std::size_t next = 1;

  using State2 = numerics::State<2>;
  auto rhs = [&](double r, const State2& y) {
    const double v = checked_weight(profile, r);
    const double a = profile.A(r);
    if (!std::isfinite(a)) fail(ErrorCode::ProfileSingularity, "A is not finite on the window");
    return State2{y[1] / v, -a * v * y[0]};
  };

  State2 y = {options.z0, options.w0};
  double x = start;
  for (double stop : breaks) {
    auto observe = [&](const numerics::DenseStep<2>& dense, const State2& now) {
      const double z_prev = dense(dense.x0)[0];
      if ((z_prev > 0.0) != (now[0] > 0.0) && z_prev != 0.0) {
        out.zeros.push_back(numerics::bisect([&](double s) { return dense(s)[0]; }, dense.x0, dense.x1(),
                                             options.zero_tol));
      }
      while (next < grid.size() && grid[next] <= dense.x1()) {
        const State2 s = grid[next] == dense.x1() ? now : dense(grid[next]);
        out.r.push_back(grid[next]);
        out.z.push_back(s[0]);
        out.w.push_back(s[1]);
        ++next;
      }
      return true;
    };
    numerics::StepControl control;
    control.rtol = options.rtol;
    control.atol = options.atol;
    control.min_step = 1e-14 * std::max(1.0, std::abs(x));
    control.initial_step = std::min(1e-4 * std::max(1.0, std::abs(x)), 0.5 * (stop - x));
    const auto res = numerics::dormand_prince<2>(rhs, x, y, stop, control, observe);
    out.steps += res.steps;
    if (res.reason != numerics::StopReason::ReachedEnd) {
      std::ostringstream os;
      os << "integration stalled at r = " << res.x;
      fail(ErrorCode::ProfileSingularity, os.str());
    }
    x = stop;
    y = res.y;
  }
  // Bisection can land a zero on a step boundary twice.
  out.zeros.erase(std::unique(out.zeros.begin(), out.zeros.end(),
                              [&](double a, double b) { return std::abs(a - b) <= options.zero_tol; }),
                  out.zeros.end());
  return out;
}

namespace {

// Running integral of g from nodes.front() sampled on the nodes.
template <class G>
std::vector<double> running_integral(const std::vector<double>& nodes, G&& g) {
  std::vector<double> acc(nodes.size(), 0.0);
  for (std::size_t i = 1; i < nodes.size(); ++i) {
    acc[i] = acc[i - 1] + numerics::integrate(g, nodes[i - 1], nodes[i], 1e-14, 1e-10).value;
  }
  return acc;
}

DivergenceFit fit_divergence(const std::vector<double>& nodes, const std::vector<double>& acc) {
  DivergenceFit fit;
  const double hi = nodes.back();
  fit.window = {std::max(nodes.front(), hi / 100.0), hi};
  fit.final_value = acc.back();
  std::vector<double> x, y;
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    if (nodes[i] < fit.window.lo || !(nodes[i] > 0.0)) continue;
    if (!(acc[i] > 0.0) || !std::isfinite(acc[i])) return fit;
    x.push_back(std::log(nodes[i]));
    y.push_back(std::log(acc[i]));
  }
  if (x.size() < 3) return fit;
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= x.size();
  my /= x.size();
  double sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  fit.slope = sxy / sxx;
  fit.diverges = fit.slope > kDivergenceSlope;
  return fit;
}

}  // namespace

OscillationReport is_oscillatory(const EndProfile& profile, double r_max, int min_zeros,
                                 const CauchyOptions& options) {
  OscillationReport rep;
  rep.min_zeros = min_zeros;
  const CauchySolution sol = integrate_cauchy(profile, r_max, options);
  rep.zeros = sol.zeros;
  rep.oscillatory = static_cast<int>(sol.zeros.size()) >= min_zeros;

  const double start = sol.start;
  constexpr int kNodes = 400;
  std::vector<double> nodes{start};
  const double first = std::max(start, r_max * 1e-6);
  for (int i = 0; i <= kNodes; ++i) {
    const double r = first * std::pow(r_max / first, static_cast<double>(i) / kNodes);
    if (r > nodes.back()) nodes.push_back(r);
  }
  nodes.back() = r_max;

  rep.mean_nonnegative = true;
  for (double r : nodes) rep.mean_nonnegative = rep.mean_nonnegative && profile.A(r) >= 0.0;
  for (double r : sol.r) rep.mean_nonnegative = rep.mean_nonnegative && profile.A(r) >= 0.0;

  rep.reciprocal_v = fit_divergence(nodes, running_integral(nodes, [&](double r) { return 1.0 / profile.v(r); }));
  rep.mean_weighted =
      fit_divergence(nodes, running_integral(nodes, [&](double r) { return profile.A(r) * profile.v(r); }));

  try {
    reciprocal_tail(profile, std::max(start, profile.R));
    rep.reciprocal_integrable = true;
  } catch (const Error& e) {
    if (e.code() != ErrorCode::NonIntegrableTail) throw;
  }
  if (rep.reciprocal_integrable) {
    const double lo = std::max({start, profile.R, r_max * 1e-12});
    constexpr int kChi = 201;
    for (int i = 0; i < kChi; ++i) {
      const double r = lo * std::pow(r_max / lo, static_cast<double>(i) / (kChi - 1));
      rep.chi_samples.emplace_back(r, critical_curve(profile, r));
    }
    auto gap = [&](double r) {
      return std::sqrt(std::max(profile.A(r), 0.0)) - std::sqrt(critical_curve(profile, r));
    };
    std::vector<double> gap_nodes;
    for (double r : nodes) {
      if (r >= lo) gap_nodes.push_back(r);
    }
    rep.sqrt_gap = fit_divergence(gap_nodes, running_integral(gap_nodes, gap));
  }

  if (rep.mean_nonnegative && rep.reciprocal_v.diverges && rep.mean_weighted.diverges) {
    rep.condition = OscillationCondition::MeanDivergence;
  } else if (rep.mean_nonnegative && rep.reciprocal_integrable && rep.sqrt_gap.diverges) {
    rep.condition = OscillationCondition::GapDivergence;
  }

  std::ostringstream os;
  os << sol.zeros.size() << " zeros on [" << start << ", " << r_max << "]; ";
  if (rep.condition == OscillationCondition::Neither) {
    os << "no condition corroborated on window";
  } else {
    os << to_string(rep.condition) << " corroborated on window";
  }
  os << " (slopes: 1/v " << rep.reciprocal_v.slope << ", Av " << rep.mean_weighted.slope;
  if (rep.reciprocal_integrable) os << ", sqrt gap " << rep.sqrt_gap.slope;
  os << ")";
  rep.diagnostics = os.str();
  rep.solution = sol;
  return rep;
}

bool zeros_interlace(const std::vector<double>& a, const std::vector<double>& b) {
  auto between = [](const std::vector<double>& outer, const std::vector<double>& inner) {
    for (std::size_t i = 0; i + 1 < outer.size(); ++i) {
      const auto n = std::count_if(inner.begin(), inner.end(),
                                   [&](double x) { return x > outer[i] && x < outer[i + 1]; });
      if (n != 1) return false;
    }
    return true;
  };
  for (double x : a) {
    if (std::find(b.begin(), b.end(), x) != b.end()) return false;
  }
  return between(a, b) && between(b, a);
}

}  // namespace mcfsol

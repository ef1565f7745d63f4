#include "mcfsol/shooting.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <numbers>
#include <thread>

#include "mcfsol/error.hpp"
#include "mcfsol/numerics/ode.hpp"
#include "mcfsol/numerics/roots.hpp"

namespace mcfsol {

double RadialModel::rho_limit() const {
  return base == FiberGeometry::Spherical ? std::numbers::pi : kInf;
}

RadialModel RadialModel::for_problem(const SolitonProblem& problem) {
  return RadialModel{default_fiber(problem.space), problem.m};
}

std::string to_string(ShotVerdict verdict) {
  switch (verdict) {
    case ShotVerdict::ReachedRhoMax: return "ReachedRhoMax";
    case ShotVerdict::GradientBlowup: return "GradientBlowup";
    case ShotVerdict::RangeExit: return "RangeExit";
    case ShotVerdict::StepUnderflow: return "StepUnderflow";
  }
  return "unknown";
}

RadialGraphSamples RadialSolution::as_graph() const {
  RadialGraphSamples g;
  g.fiber = model.base;
  for (std::size_t i = 0; i < rho.size(); ++i) {
    if (!(rho[i] > 0.0)) continue;
    g.rho.push_back(rho[i]);
    g.u.push_back(u[i]);
    g.du.push_back(du[i]);
  }
  return g;
}

double rhs_f(const SolitonProblem& problem, double s) { return graph_forcing(problem, s); }

namespace {

using State3 = numerics::State<3>;

// Output radii: uniform on (0, rho_max] merged with a log-spaced cluster at
// the pole.
std::vector<double> output_grid(double rho_max, const ShootOptions& o) {
  std::vector<double> grid;
  for (int i = 1; i <= o.uniform_samples; ++i) grid.push_back(rho_max * i / o.uniform_samples);
  const double top = std::min(100.0 * o.epsilon, rho_max);
  for (int i = 1; i <= o.pole_samples; ++i) {
    grid.push_back(o.epsilon * std::pow(top / o.epsilon, static_cast<double>(i) / o.pole_samples));
  }
  std::sort(grid.begin(), grid.end());
  grid.erase(std::unique(grid.begin(), grid.end(),
                         [](double a, double b) { return std::abs(a - b) <= 1e-15 * b; }),
             grid.end());
  grid.erase(std::remove_if(grid.begin(), grid.end(), [&](double r) { return r <= o.epsilon; }),
             grid.end());
  return grid;
}

// First sigma in [a, b] where g(dense(sigma)) drops to zero, given g(a) > 0 >= g(b).
template <class G>
double locate(const numerics::DenseStep<3>& dense, double a, double b, G&& g) {
  return numerics::bisect([&](double x) { return g(dense(x)); }, a, b);
}

}  // namespace

RadialSolution shoot_radial(const SolitonProblem& problem, const RadialModel& model, double u0,
                            double rho_max, const ShootOptions& options) {
  if (model.m != problem.m) fail(ErrorCode::InvalidParams, "model dimension differs from m");
  if (!(rho_max > options.epsilon) || !std::isfinite(rho_max)) {
    fail(ErrorCode::InvalidParams, "rho_max must be finite and exceed the series start");
  }
  if (rho_max >= model.rho_limit()) {
    fail(ErrorCode::InvalidParams, "rho_max must stay below pi on a spherical fiber");
  }
  if (!(options.rtol > 0.0) || !(options.blowup > 0.0) || options.uniform_samples < 1) {
    fail(ErrorCode::InvalidParams, "invalid shooting tolerances");
  }
  const Interval window = options.s_window.value_or(problem.space.s_window());
  if (!std::isfinite(u0) || !(u0 >= window.lo && u0 <= window.hi)) {
    fail(ErrorCode::InvalidParams, "u0 lies outside the admissible s window");
  }

  RadialSolution out;
  out.u0 = u0;
  out.rho_max = rho_max;
  out.model = model;
  out.options = options;
  out.f_u0 = rhs_f(problem, u0);

  const auto [a, b] = bowl_coefficients(problem, u0, model.base);
  const double eps = options.epsilon;
  out.rho.push_back(0.0);
  out.u.push_back(u0);
  out.du.push_back(0.0);
  const State3 start = {eps, u0 + a * eps * eps + b * eps * eps * eps * eps,
                        std::atan(2.0 * a * eps + 4.0 * b * eps * eps * eps)};
  out.rho.push_back(start[0]);
  out.u.push_back(start[1]);
  out.du.push_back(std::tan(start[2]));

  // Arclength form: rho' = cos phi, u' = sin phi, phi' = f(u) cos phi - snn(rho) sin phi,
  // with phi = atan(u'). Vertical tangents stay regular in this form.
  auto rhs = [&](double, const State3& y) {
    const double s = std::clamp(y[1], window.lo, window.hi);
    const double f = rhs_f(problem, s);
    const double c = std::cos(y[2]), sn = std::sin(y[2]);
    return State3{c, sn, f * c - model.snn(y[0]) * sn};
  };

  const std::vector<double> grid = output_grid(rho_max, options);
  std::size_t next = 0;
  const double cos_blowup = 1.0 / std::hypot(1.0, options.blowup);
  State3 previous = start;
  bool stopped = false;

  auto emit_until = [&](const numerics::DenseStep<3>& dense, double sigma_stop) {
    const double rho_stop = dense(sigma_stop)[0];
    while (next < grid.size() && grid[next] <= rho_stop) {
      const double target = grid[next];
      const double sigma = numerics::bisect(
          [&](double x) { return dense(x)[0] - target; }, dense.x0, sigma_stop);
      const State3 y = dense(sigma);
      out.rho.push_back(target);
      out.u.push_back(y[1]);
      out.du.push_back(std::tan(y[2]));
      ++next;
    }
  };

  auto observe = [&](const numerics::DenseStep<3>& dense, const State3& y) {
    const double s0 = dense.x0, s1 = dense.x1();
    struct Event {
      double sigma;
      ShotVerdict verdict;
    };
    std::optional<Event> first;
    auto consider = [&](double g_prev, double g_now, auto&& g, ShotVerdict v) {
      if (!(g_now <= 0.0) || !(g_prev > 0.0)) return;
      const double sigma = locate(dense, s0, s1, g);
      if (!first || sigma < first->sigma) first = Event{sigma, v};
    };
    auto g_blow = [&](const State3& z) { return std::cos(z[2]) - cos_blowup; };
    auto g_lo = [&](const State3& z) { return z[1] - window.lo; };
    auto g_hi = [&](const State3& z) { return window.hi - z[1]; };
    auto g_rho = [&](const State3& z) { return rho_max - z[0]; };
    consider(g_blow(previous), g_blow(y), g_blow, ShotVerdict::GradientBlowup);
    consider(g_lo(previous), g_lo(y), g_lo, ShotVerdict::RangeExit);
    consider(g_hi(previous), g_hi(y), g_hi, ShotVerdict::RangeExit);
    consider(g_rho(previous), g_rho(y), g_rho, ShotVerdict::ReachedRhoMax);
    if (first) {
      emit_until(dense, first->sigma);
      const State3 z = dense(first->sigma);
      out.verdict = first->verdict;
      out.rho_end = first->verdict == ShotVerdict::ReachedRhoMax ? rho_max : z[0];
      if (out.rho.back() < out.rho_end) {
        out.rho.push_back(out.rho_end);
        out.u.push_back(z[1]);
        out.du.push_back(std::tan(z[2]));
      }
      stopped = true;
      return false;
    }
    emit_until(dense, s1);
    previous = y;
    return true;
  };

  numerics::StepControl control;
  control.rtol = options.rtol;
  control.atol = options.atol;
  control.initial_step = eps;
  control.max_step = rho_max / 20.0;
  control.min_step = options.underflow * rho_max;
  control.max_steps = 2'000'000;
  const double sigma_end = 1e12 * std::max(1.0, rho_max);
  const auto result = numerics::dormand_prince<3>(rhs, eps, start, sigma_end, control, observe);
  out.steps = result.steps;
  if (!stopped) {
    out.verdict = ShotVerdict::StepUnderflow;
    out.rho_end = result.y[0];
    if (out.rho.back() < result.y[0]) {
      out.rho.push_back(result.y[0]);
      out.u.push_back(result.y[1]);
      out.du.push_back(std::tan(result.y[2]));
    }
  }
  return out;
}

TranslatorCurve curve_translator(double k, Interval tau_window, int samples) {
  if (k == 0.0 || !std::isfinite(k)) fail(ErrorCode::InvalidParams, "k must be nonzero");
  if (samples < 3) fail(ErrorCode::InsufficientSamples, "need at least 3 samples");
  const double limit = 0.5 * std::numbers::pi - 1e-3;
  if (!(tau_window.lo < tau_window.hi) || std::abs(k * tau_window.lo) >= limit ||
      std::abs(k * tau_window.hi) >= limit) {
    fail(ErrorCode::WindowTooWide, "|k tau| must stay below pi/2 - 1e-3");
  }

  TranslatorCurve out;
  out.closed_form.kind = ExactKind::GrimReaperCurve;
  out.closed_form.params = {{"k", k}, {"tau_lo", tau_window.lo}, {"tau_hi", tau_window.hi}};
  out.closed_form.orientation = "left normal of (x'(tau), 1)";
  out.closed_form.problem = make_problem(AmbientSpace::product(1, 1.0), k);
  auto& curve = out.closed_form.curve;
  for (int i = 0; i < samples; ++i) {
    const double tau = tau_window.lo + (tau_window.hi - tau_window.lo) * i / (samples - 1);
    curve.tau.push_back(tau);
    curve.point.emplace_back(-std::log(std::cos(k * tau)) / k, tau);
    curve.tangent.emplace_back(std::tan(k * tau), 1.0);
  }

  // (arctan x')' = k from the vertex: y = (x, phi), x' = tan phi, phi' = k.
  using State2 = numerics::State<2>;
  auto rhs = [k](double, const State2& y) { return State2{std::tan(y[1]), k}; };
  numerics::StepControl control;
  control.rtol = 1e-13;
  control.atol = 1e-15;
  out.x_numeric.assign(samples, 0.0);
  auto sweep = [&](double end, int first, int step) {
    int idx = first;
    auto observe = [&](const numerics::DenseStep<2>& dense, const State2&) {
      const double lo = std::min(dense.x0, dense.x1()), hi = std::max(dense.x0, dense.x1());
      while (idx >= 0 && idx < samples && curve.tau[idx] >= lo && curve.tau[idx] <= hi) {
        out.x_numeric[idx] = dense(curve.tau[idx])[0];
        idx += step;
      }
      return true;
    };
    numerics::dormand_prince<2>(rhs, 0.0, State2{0.0, 0.0}, end, control, observe);
  };
  // Samples on each side of the vertex are filled by the sweep heading their way.
  const auto split = std::lower_bound(curve.tau.begin(), curve.tau.end(), 0.0) - curve.tau.begin();
  const int right_first = static_cast<int>(split);
  if (right_first < samples) {
    if (curve.tau[right_first] == 0.0) out.x_numeric[right_first] = 0.0;
    sweep(std::max(tau_window.hi, 0.0), right_first, 1);
  }
  if (right_first > 0) sweep(std::min(tau_window.lo, 0.0), right_first - 1, -1);
  for (int i = 0; i < samples; ++i) {
    out.max_deviation =
        std::max(out.max_deviation, std::abs(out.x_numeric[i] - curve.point[i].first));
  }
  return out;
}

std::vector<double> default_u0_grid(const SolitonProblem& problem, int n) {
  if (n < 1) fail(ErrorCode::InvalidParams, "need at least one shot");
  const Interval w = problem.space.working_window();
  const bool log_spacing = w.lo > 0.0 && w.hi / w.lo > 1e3;
  std::vector<double> grid;
  for (int i = 0; i < n; ++i) {
    const double frac = (i + 1.0) / (n + 1.0);
    const double t = log_spacing ? w.lo * std::pow(w.hi / w.lo, frac) : w.lo + (w.hi - w.lo) * frac;
    grid.push_back(problem.space.flow_param_s(t));
  }
  return grid;
}

ProbeReport entire_graph_probe(const SolitonProblem& problem, const RadialModel& model,
                               const std::vector<double>& u0_grid, double rho_max,
                               const ProbeOptions& options) {
  ProbeReport report;
  const SliceReport slices = find_soliton_slices(problem);
  report.every_slice_entire = slices.degenerate;
  for (const auto& root : slices.roots) {
    report.slice_solutions.push_back(problem.space.flow_param_s(root.t));
  }

  std::vector<double> grid = u0_grid;
  std::sort(grid.begin(), grid.end());
  report.shots.resize(grid.size());
  std::vector<std::exception_ptr> errors(grid.size());
  std::atomic<std::size_t> cursor{0};

  auto worker = [&] {
    for (std::size_t i = cursor++; i < grid.size(); i = cursor++) {
      try {
        const RadialSolution sol = shoot_radial(problem, model, grid[i], rho_max, options.shoot);
        ShotSummary& s = report.shots[i];
        s.u0 = grid[i];
        s.verdict = sol.verdict;
        s.rho_end = sol.rho_end;
        s.f_u0 = sol.f_u0;
        s.u_max = *std::max_element(sol.u.begin(), sol.u.end());
        const double u_min = *std::min_element(sol.u.begin(), sol.u.end());
        s.constant = std::abs(sol.f_u0) <=
                     1e-12 * zeta_scale(problem, problem.space.t_of_s(grid[i]));
        if (sol.verdict == ShotVerdict::ReachedRhoMax) {
          // Height at rho_max / 2 from the nearest output sample.
          const auto it = std::lower_bound(sol.rho.begin(), sol.rho.end(), 0.5 * rho_max);
          const double u_half = sol.u[static_cast<std::size_t>(it - sol.rho.begin())];
          const double excursion = s.u_max - u_min;
          s.bounded = std::abs(sol.u.back() - u_half) <=
                      options.tail_tolerance * (1.0 + excursion);
        }
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const int jobs = std::max(1, std::min<int>(options.jobs, static_cast<int>(grid.size())));
  std::vector<std::thread> pool;
  for (int j = 1; j < jobs; ++j) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }

  for (const auto& s : report.shots) {
    if (s.bounded && !s.constant) ++report.bounded_nonconstant;
  }
  const std::string slice_part = std::to_string(report.slice_solutions.size()) + " slice solution" +
                                 (report.slice_solutions.size() == 1 ? "" : "s");
  if (report.every_slice_entire) {
    report.summary = "f vanishes identically: every slice is an entire solution";
  } else if (report.bounded_nonconstant == 0) {
    report.summary = "no bounded entire radial solution found; " + slice_part;
  } else {
    report.summary = std::to_string(report.bounded_nonconstant) +
                     " bounded non-constant radial candidates; " + slice_part;
  }
  return report;
}

}  // namespace mcfsol

#include "mcfsol/cli.hpp"

#include <chrono>
#include <cmath>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <numbers>
#include <sstream>

#include "json.hpp"
#include "mcfsol/config.hpp"
#include "mcfsol/error.hpp"
#include "mcfsol/oscillation.hpp"
#include "mcfsol/shooting.hpp"
#include "mcfsol/spectral.hpp"

namespace mcfsol {

using json = nlohmann::ordered_json;
namespace fs = std::filesystem;

const std::vector<std::string>& command_names() {
  static const std::vector<std::string> names = {"slices",   "shoot",     "curve",           "probe-entire",
                                                 "spectrum", "oscillate", "classify-growth", "verify"};
  return names;
}

namespace {

struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  void add(std::vector<std::string> row) { rows.push_back(std::move(row)); }

  std::string text() const {
    std::string out;
    auto line = [&](const std::vector<std::string>& cells) {
      for (std::size_t i = 0; i < cells.size(); ++i) out += (i ? "," : "") + cells[i];
      out += "\n";
    };
    line(header);
    for (const auto& r : rows) line(r);
    return out;
  }
};

std::string num(double x) { return format_double(x); }

json finite_or_null(double x) { return std::isfinite(x) ? json(x) : json(nullptr); }

struct Artifact {
  json body;
  Table table;
  bool success = true;
};

struct Session {
  const CliOptions& options;
  RunConfig config;
  std::ostream& out;
};

json space_json(const SolitonProblem& p) {
  const Interval w = p.space.working_window();
  return json{{"description", p.space.description()},
              {"kind", to_string(p.space.kind())},
              {"m", p.m},
              {"c", p.c},
              {"working_window", {w.lo, w.hi}}};
}

// ---------------------------------------------------------------------------

Artifact cmd_slices(Session& s) {
  const SolitonProblem problem = build_problem(s.config);
  SliceScanOptions opts;
  if (s.config.slices) {
    opts.nodes = s.config.slices->nodes;
    opts.dip_tolerance = s.config.slices->dip_tolerance;
  }
  if (s.options.tol) opts.dip_tolerance = *s.options.tol;
  const SliceReport rep = find_soliton_slices(problem, opts);

  Artifact a;
  a.table.header = {"t", "s", "r", "multiplicity", "zeta"};
  json roots = json::array();
  for (const auto& r : rep.roots) {
    const double sv = problem.space.flow_param_s(r.t);
    json j{{"t", r.t}, {"s", finite_or_null(sv)}, {"multiplicity", r.multiplicity}, {"zeta", r.zeta}, {"zeta_scale", r.scale}};
    if (r.r) j["r"] = *r.r;
    roots.push_back(j);
    a.table.add({num(r.t), num(sv), r.r ? num(*r.r) : "nan", std::to_string(r.multiplicity), num(r.zeta)});
  }
  a.body = {{"command", "slices"},
            {"space", space_json(problem)},
            {"window", {rep.window.lo, rep.window.hi}},
            {"nodes", rep.nodes},
            {"degenerate", rep.degenerate},
            {"root_count", rep.roots.size()},
            {"roots", roots}};
  if (rep.closed_form) {
    const auto& cf = *rep.closed_form;
    json j{{"verdict", to_string(cf.verdict)}, {"expected_roots", cf.expected_roots()}, {"margin", cf.margin}};
    if (cf.r_star) j["r_star"] = *cf.r_star;
    if (cf.r_threshold) j["r_threshold"] = *cf.r_threshold;
    if (cf.discriminant) j["discriminant"] = *cf.discriminant;
    if (cf.r_star_plus) j["r_star_plus"] = *cf.r_star_plus;
    if (cf.r_star_minus) j["r_star_minus"] = *cf.r_star_minus;
    if (!cf.note.empty()) j["note"] = cf.note;
    a.body["closed_form"] = j;
  }
  a.body["tolerances"] = {{"dip_tolerance", opts.dip_tolerance}, {"root_bisection", "to adjacent doubles"}};
  s.out << rep.roots.size() << " slice root(s) on [" << rep.window.lo << ", " << rep.window.hi << "]\n";
  return a;
}

ShootOptions shoot_options(const Session& s) {
  ShootOptions o;
  if (s.config.shoot) o.uniform_samples = s.config.shoot->grid;
  if (s.options.tol) o.rtol = *s.options.tol;
  return o;
}

Artifact cmd_shoot(Session& s) {
  const SolitonProblem problem = build_problem(s.config);
  const ShootConfig sc = s.config.shoot.value_or(ShootConfig{});
  const RadialModel model{fiber_from_name(sc.fiber, problem), problem.m};
  const ShootOptions o = shoot_options(s);
  const RadialSolution sol = shoot_radial(problem, model, sc.u0, sc.rho_max, o);
  Artifact a;
  a.table.header = {"rho", "u", "du"};
  for (std::size_t i = 0; i < sol.rho.size(); ++i) a.table.add({num(sol.rho[i]), num(sol.u[i]), num(sol.du[i])});
  a.body = {{"command", "shoot"},
            {"space", space_json(problem)},
            {"fiber", to_string(model.base)},
            {"u0", sol.u0},
            {"f_u0", sol.f_u0},
            {"rho_max", sol.rho_max},
            {"verdict", to_string(sol.verdict)},
            {"rho_end", sol.rho_end},
            {"steps", sol.steps},
            {"samples", {{"rho", sol.rho}, {"u", sol.u}, {"du", sol.du}}},
            {"tolerances", {{"rtol", o.rtol}, {"atol", o.atol}, {"series_start", o.epsilon}, {"blowup", o.blowup}}}};
  s.out << "verdict " << to_string(sol.verdict) << " at rho = " << sol.rho_end << "\n";
  return a;
}

Artifact cmd_curve(Session& s) {
  const CurveConfig cc = s.config.curve.value_or(CurveConfig{});
  const TranslatorCurve tc = curve_translator(cc.k, {cc.tau[0], cc.tau[1]}, cc.samples);
  const double residual = translator_curve_residual(tc.closed_form.curve, cc.k);
  Artifact a;
  a.table.header = {"tau", "x", "y", "x_numeric"};
  const auto& c = tc.closed_form.curve;
  std::vector<double> x, y;
  for (std::size_t i = 0; i < c.tau.size(); ++i) {
    a.table.add({num(c.tau[i]), num(c.point[i].first), num(c.point[i].second), num(tc.x_numeric[i])});
    x.push_back(c.point[i].first);
    y.push_back(c.point[i].second);
  }
  a.body = {{"command", "curve"},
            {"k", cc.k},
            {"tau_window", cc.tau},
            {"max_deviation", tc.max_deviation},
            {"curve_residual", residual},
            {"samples", {{"tau", c.tau}, {"x", x}, {"y", y}, {"x_numeric", tc.x_numeric}}},
            {"tolerances", {{"integration_rtol", 1e-13}}}};
  s.out << "max deviation from the closed form " << tc.max_deviation << "\n";
  return a;
}

Artifact cmd_probe(Session& s) {
  const SolitonProblem problem = build_problem(s.config);
  const ShootConfig sc = s.config.shoot.value_or(ShootConfig{});
  const RadialModel model{fiber_from_name(sc.fiber, problem), problem.m};
  ProbeOptions po;
  po.shoot = shoot_options(s);
  po.jobs = s.options.jobs;
  const std::vector<double> grid = sc.u0_grid.empty() ? default_u0_grid(problem, sc.shots) : sc.u0_grid;
  const ProbeReport rep = entire_graph_probe(problem, model, grid, sc.rho_max, po);
  Artifact a;
  a.table.header = {"u0", "verdict", "rho_end", "u_max", "f_u0", "bounded", "constant"};
  json shots = json::array();
  for (const auto& shot : rep.shots) {
    shots.push_back({{"u0", shot.u0},
                     {"verdict", to_string(shot.verdict)},
                     {"u_max", shot.u_max},
                     {"rho_end", shot.rho_end},
                     {"f_u0", shot.f_u0},
                     {"bounded", shot.bounded},
                     {"constant", shot.constant}});
    a.table.add({num(shot.u0), to_string(shot.verdict), num(shot.rho_end), num(shot.u_max), num(shot.f_u0),
                 shot.bounded ? "true" : "false", shot.constant ? "true" : "false"});
  }
  a.body = {{"command", "probe-entire"},
            {"space", space_json(problem)},
            {"fiber", to_string(model.base)},
            {"rho_max", sc.rho_max},
            {"shots", shots},
            {"slice_solutions", rep.slice_solutions},
            {"every_slice_entire", rep.every_slice_entire},
            {"bounded_nonconstant", rep.bounded_nonconstant},
            {"summary", rep.summary},
            {"tolerances", {{"rtol", po.shoot.rtol}, {"tail_tolerance", po.tail_tolerance}, {"blowup", po.shoot.blowup}}}};
  s.out << rep.summary << "\n";
  return a;
}

Artifact cmd_spectrum(Session& s) {
  const SpectrumConfig sp = s.config.spectrum.value_or(SpectrumConfig{});
  SLProblem sl;
  sl.interval = {sp.interval[0], sp.interval[1]};
  sl.boundary = boundary_from_name(sp.boundary);
  const RadialFunction weight = RadialFunction::parse(sp.weight);
  sl.v = [weight](double r) { return weight(r); };
  json potential;
  if (sp.target != "none") {
    const SolitonProblem problem = build_problem(s.config);
    StabilityTarget target = sp.target == "equator"      ? StabilityTarget::equator()
                             : sp.target == "horosphere" ? StabilityTarget::horosphere()
                                                         : StabilityTarget::slice(sp.t0);
    const StabilityPotential p = stability_potential(problem, target);
    sl.q = p.as_function();
    potential = {{"target", to_string(p.target)},
                 {"t0", p.t0},
                 {"q", p.q},
                 {"second_fundamental_sq", p.second_fundamental_sq},
                 {"ricci_normal", p.ricci_normal},
                 {"drift_term", p.drift_term},
                 {"zeta", p.zeta}};
    if (p.constant_curvature_form) potential["constant_curvature_form"] = *p.constant_curvature_form;
  } else if (sp.potential) {
    const RadialFunction q = RadialFunction::parse(*sp.potential);
    sl.q = [q](double r) { return q(r); };
    potential = {{"target", "none"}, {"profile", q.description()}};
  } else {
    const double q = sp.q.value_or(0.0);
    sl.q = [q](double) { return q; };
    potential = {{"target", "none"}, {"q", q}};
  }
  const SpectrumEstimate est = lambda1_sl(sl, sp.grid_n);
  Artifact a;
  a.table.header = {"r", "z"};
  for (std::size_t i = 0; i < est.r.size(); ++i) a.table.add({num(est.r[i]), num(est.eigenfunction[i])});
  a.body = {{"command", "spectrum"},
            {"lambda1", est.lambda1},
            {"error", est.richardson_error},
            {"lambda1_extrapolated", est.lambda1_extrapolated},
            {"lambda1_coarse", est.lambda1_coarse},
            {"boundary", to_string(est.boundary)},
            {"grid_n", est.grid_n},
            {"interval", sp.interval},
            {"weight", weight.description()},
            {"potential", potential},
            {"discrete_index", est.discrete_index},
            {"tolerances", {{"richardson_error", est.richardson_error}, {"eigenvalue_bisection", "to adjacent doubles"}}}};
  s.out << "lambda1 = " << std::setprecision(12) << est.lambda1 << " (error " << std::setprecision(3)
        << est.richardson_error << ")\n";
  return a;
}

json fit_json(const DivergenceFit& f) {
  return {{"window", {f.window.lo, f.window.hi}},
          {"final_value", finite_or_null(f.final_value)},
          {"slope", f.slope},
          {"diverges", f.diverges}};
}

Artifact cmd_oscillate(Session& s) {
  const OscillateConfig oc = s.config.oscillate.value_or(OscillateConfig{});
  EndProfile profile{RadialFunction::parse(oc.v), RadialFunction::parse(oc.A), oc.R, oc.kinks};
  const std::array<double, 2> window = oc.window.value_or(std::array<double, 2>{2.0 * oc.R, 1e4});
  CauchyOptions co;
  co.start = window[0];
  co.samples = oc.samples;
  if (s.options.tol) co.rtol = *s.options.tol;
  const OscillationReport rep = is_oscillatory(profile, window[1], oc.min_zeros, co);
  Artifact a;
  a.table.header = {"r", "z", "vdz", "chi"};
  for (std::size_t i = 0; i < rep.solution.r.size(); ++i) {
    const double r = rep.solution.r[i];
    const double chi = rep.reciprocal_integrable && r >= profile.R ? critical_curve(profile, r) : NAN;
    a.table.add({num(r), num(rep.solution.z[i]), num(rep.solution.w[i]), num(chi)});
  }
  json chi = json::array();
  for (auto [r, c] : rep.chi_samples) chi.push_back({r, c});
  a.body = {{"command", "oscillate"},
            {"v", profile.v.description()},
            {"A", profile.A.description()},
            {"R", oc.R},
            {"window", window},
            {"zeros", rep.zeros},
            {"zero_count", rep.zeros.size()},
            {"min_zeros", rep.min_zeros},
            {"oscillatory", rep.oscillatory},
            {"condition", to_string(rep.condition)},
            {"mean_nonnegative", rep.mean_nonnegative},
            {"reciprocal_integrable", rep.reciprocal_integrable},
            {"fits",
             {{"reciprocal_v", fit_json(rep.reciprocal_v)},
              {"mean_weighted", fit_json(rep.mean_weighted)},
              {"sqrt_gap", fit_json(rep.sqrt_gap)}}},
            {"diagnostics", rep.diagnostics},
            {"chi_samples", chi},
            {"tolerances", {{"rtol", co.rtol}, {"zero_tol", co.zero_tol}, {"divergence_slope", kDivergenceSlope}}}};
  s.out << rep.diagnostics << "\n";
  return a;
}

Artifact cmd_growth(Session& s) {
  const GrowthConfig gc = s.config.growth.value_or(GrowthConfig{});
  GrowthProfile profile{gc.kind == "sphere-area" ? GrowthKind::SphereArea : GrowthKind::BallVolume,
                        RadialFunction::parse(gc.profile), gc.r_min, gc.r_max};
  const GrowthClassification g = growth_classify(profile);
  Artifact a;
  a.body = {{"command", "classify-growth"},
            {"kind", to_string(g.kind)},
            {"profile", profile.f.description()},
            {"tail", {g.tail.lo, g.tail.hi}},
            {"model", g.exponential ? "exponential" : "polynomial"},
            {"degree", g.degree},
            {"degree_residual", g.degree_residual},
            {"alpha", g.alpha},
            {"alpha_residual", g.alpha_residual},
            {"brooks_higuchi_bound", g.brooks_higuchi_bound},
            {"flags",
             {{"exponential", g.exponential},
              {"subexponential", g.subexponential},
              {"subquadratic", g.subquadratic},
              {"quadratic", g.quadratic},
              {"parabolic_criterion", g.parabolic_criterion},
              {"monotone", g.monotone}}},
            {"tolerances", {{"fit_residual", g.exponential ? g.alpha_residual : g.degree_residual}}}};
  a.table.header = {"key", "value"};
  for (auto it = a.body.begin(); it != a.body.end(); ++it) {
    if (it.value().is_number() || it.value().is_string()) {
      a.table.add({it.key(), it.value().is_string() ? it.value().get<std::string>() : it.value().dump()});
    }
  }
  for (auto it = a.body["flags"].begin(); it != a.body["flags"].end(); ++it) a.table.add({it.key(), it.value().dump()});
  s.out << (g.exponential ? "exponential, alpha = " : "polynomial, degree = ")
        << (g.exponential ? g.alpha : g.degree) << "\n";
  return a;
}

struct VerifyRow {
  std::string name;
  ExactKind kind;
  ExactParams params;
  double tolerance;
};

std::vector<VerifyRow> verify_catalog() {
  std::vector<VerifyRow> rows;
  const double edge = 0.025 * std::numbers::pi;  // interior 95% of the grim reaper window
  for (double k : {0.5, 1.0, 2.0}) {
    ExactParams p;
    p.k = k;
    p.edge = edge;
    rows.push_back({"grim-reaper k=" + num(k), ExactKind::GrimReaperCurve, p, 1e-8});
  }
  for (int m : {2, 3}) {
    ExactParams p;
    p.m = m;
    p.c = -1.0;
    rows.push_back({"shrinker-sphere m=" + std::to_string(m), ExactKind::ShrinkerSphere, p, 1e-10});
  }
  {
    ExactParams p;
    p.m = 2;
    p.sphere_dims = 1;
    p.c = -1.0;
    rows.push_back({"shrinker-cylinder k=1 m=2", ExactKind::ShrinkerCylinder, p, 1e-10});
  }
  for (double c : {-1.0, -2.0, -5.0}) {
    ExactParams p;
    p.m = 2;
    p.c = c;
    rows.push_back({"horosphere-slice m=2 c=" + num(c), ExactKind::HorosphereSlice, p, 1e-10});
  }
  for (double c : {0.0, 0.5}) {
    ExactParams p;
    p.m = 2;
    p.c = c;
    rows.push_back({"hypersphere-slice m=2 c=" + num(c), ExactKind::HypersphereSlice, p, 1e-10});
  }
  for (int m : {2, 3}) {
    ExactParams p;
    p.m = m;
    p.c = 1.0;
    rows.push_back({"bowl-series m=" + std::to_string(m) + " c=1", ExactKind::BowlSeries, p, 1e-8});
  }
  return rows;
}

Artifact cmd_verify(Session& s) {
  Artifact a;
  a.table.header = {"name", "kind", "residual", "tolerance", "pass"};
  json rows = json::array();
  bool all = true;
  std::ostringstream table;
  table << std::left << std::setw(30) << "solution" << std::setw(14) << "residual" << std::setw(12) << "tolerance"
        << "result\n";
  for (const auto& row : verify_catalog()) {
    const ExactSoliton sol = exact_solution(row.kind, row.params);
    const double residual = soliton_residual(sol);
    const double tol = s.options.tol.value_or(row.tolerance);
    const bool pass = residual < tol;
    all = all && pass;
    json params = json::object();
    for (const auto& [k, v] : sol.params) params[k] = v;
    rows.push_back({{"name", row.name},
                    {"kind", to_string(row.kind)},
                    {"params", params},
                    {"orientation", sol.orientation},
                    {"residual", residual},
                    {"tolerance", tol},
                    {"pass", pass}});
    a.table.add({row.name, to_string(row.kind), num(residual), num(tol), pass ? "true" : "false"});
    std::ostringstream res;
    res << std::scientific << std::setprecision(2) << residual;
    std::ostringstream tl;
    tl << std::scientific << std::setprecision(0) << tol;
    table << std::left << std::setw(30) << row.name << std::setw(14) << res.str() << std::setw(12) << tl.str()
          << (pass ? "PASS" : "FAIL") << "\n";
  }
  a.body = {{"command", "verify"}, {"rows", rows}, {"all_pass", all}};
  if (s.options.tol) a.body["tolerance_override"] = *s.options.tol;
  s.out << table.str();
  a.success = all;
  return a;
}

std::string timestamp() {
  const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

void write_file(const fs::path& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) fail(ErrorCode::ValidationError, "cannot write '" + path.string() + "'");
  f << text;
}

}  // namespace

int run_command(const CliOptions& options, std::ostream& out, std::ostream& err) {
  try {
    const auto& names = command_names();
    if (std::find(names.begin(), names.end(), options.command) == names.end()) {
      fail(ErrorCode::ValidationError, "unknown command '" + options.command + "'");
    }
    if (options.jobs < 1) fail(ErrorCode::ValidationError, "--jobs must be at least 1");
    if (options.tol && !(*options.tol > 0.0)) fail(ErrorCode::ValidationError, "--tol must be positive");
    Session s{options, RunConfig{}, out};
    if (options.config_path) {
      s.config = load_config(*options.config_path);
    } else if (options.command != "verify") {
      fail(ErrorCode::ValidationError, "command '" + options.command + "' needs --config");
    }
    if (options.format) {
      if (*options.format != "csv" && *options.format != "json") {
        fail(ErrorCode::ValidationError, "--format must be csv or json");
      }
      s.config.output.format = *options.format;
    }
    if (options.out_dir) s.config.output.path = *options.out_dir;

    const std::string stem = options.command == "probe-entire" ? "probe" : options.command;
    const fs::path dir = s.config.output.path;
    const fs::path data = dir / (stem + "." + s.config.output.format);
    const fs::path meta = dir / (stem + ".meta.json");
    if (!options.force && (fs::exists(data) || fs::exists(meta))) {
      fail(ErrorCode::ValidationError, "'" + data.string() + "' exists; pass --force to overwrite");
    }

    Artifact a;
    if (options.command == "slices") a = cmd_slices(s);
    else if (options.command == "shoot") a = cmd_shoot(s);
    else if (options.command == "curve") a = cmd_curve(s);
    else if (options.command == "probe-entire") a = cmd_probe(s);
    else if (options.command == "spectrum") a = cmd_spectrum(s);
    else if (options.command == "oscillate") a = cmd_oscillate(s);
    else if (options.command == "classify-growth") a = cmd_growth(s);
    else a = cmd_verify(s);

    fs::create_directories(dir);
    if (s.config.output.format == "json") {
      write_file(data, a.body.dump(2) + "\n");
    } else {
      write_file(data, a.table.text());
    }
    json m{{"command", options.command},
           {"version", kVersion},
           {"timestamp", timestamp()},
           {"config_path", options.config_path.value_or("")},
           {"config", serialize_config(s.config)},
           {"format", s.config.output.format},
           {"jobs", options.jobs},
           {"data", data.string()}};
    write_file(meta, m.dump(2) + "\n");
    out << "wrote " << data.string() << "\n";
    if (!a.success) {
      err << "verify: some residuals exceed their tolerance\n";
      return static_cast<int>(ErrorClass::Numerical);
    }
    return 0;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return static_cast<int>(classify(e.code()));
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return static_cast<int>(ErrorClass::Numerical);
  }
}

}  // namespace mcfsol

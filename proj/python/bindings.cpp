#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "mcfsol/cli.hpp"
#include "mcfsol/config.hpp"
#include "mcfsol/error.hpp"
#include "mcfsol/oscillation.hpp"
#include "mcfsol/shooting.hpp"
#include "mcfsol/spectral.hpp"

namespace py = pybind11;
using namespace mcfsol;

namespace {

SchwarzschildFamily family_from(const std::string& name) {
  if (name == "plain" || name == "schwarzschild") return SchwarzschildFamily::Plain;
  if (name == "ads") return SchwarzschildFamily::AntiDeSitter;
  if (name == "rn") return SchwarzschildFamily::ReissnerNordstrom;
  fail(ErrorCode::InvalidParams, "family must be plain, ads or rn");
}

ExactKind exact_from(const std::string& name) {
  for (auto k : {ExactKind::GrimReaperCurve, ExactKind::ShrinkerSphere, ExactKind::ShrinkerCylinder,
                 ExactKind::HorosphereSlice, ExactKind::HypersphereSlice, ExactKind::BowlSeries}) {
    if (to_string(k) == name) return k;
  }
  fail(ErrorCode::InvalidParams, "unknown exact solution '" + name + "'");
}

// Python float or callable -> radial function; a constant never touches the GIL.
std::function<double(double)> radial(const py::object& obj) {
  if (py::isinstance<py::float_>(obj) || py::isinstance<py::int_>(obj)) {
    const double c = obj.cast<double>();
    return [c](double) { return c; };
  }
  return obj.cast<std::function<double(double)>>();
}

SLProblem sl_problem(const py::object& v, const py::object& q, double a, double b, const std::string& boundary) {
  return SLProblem{radial(v), radial(q), {a, b}, boundary_from_name(boundary)};
}

py::dict fit_dict(const DivergenceFit& f) {
  py::dict d;
  d["window"] = py::make_tuple(f.window.lo, f.window.hi);
  d["final_value"] = f.final_value;
  d["slope"] = f.slope;
  d["diverges"] = f.diverges;
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Warped-product soliton toolkit (C++ core)";
  py::register_exception<Error>(m, "MCFSolError", PyExc_ValueError);

  py::class_<AmbientSpace>(m, "AmbientSpace")
      .def_static("euclidean_cone", &AmbientSpace::euclidean_cone, py::arg("m"))
      .def_static("hyperbolic_horosphere", &AmbientSpace::hyperbolic_horosphere, py::arg("m"))
      .def_static("hyperbolic_hypersphere", &AmbientSpace::hyperbolic_hypersphere, py::arg("m"))
      .def_static("sphere_cone", &AmbientSpace::sphere_cone, py::arg("m"))
      .def_static("product", &AmbientSpace::product, py::arg("m"), py::arg("h0") = 1.0)
      .def_static(
          "schwarzschild",
          [](int m, double mass, const std::string& family, int kbar, double charge) {
            SchwarzschildParams p;
            p.m = m;
            p.mass = mass;
            p.family = family_from(family);
            p.kbar = kbar;
            p.charge = charge;
            return make_schwarzschild(p);
          },
          py::arg("m") = 3, py::arg("mass") = 0.5, py::arg("family") = "plain", py::arg("kbar") = 0,
          py::arg("charge") = 0.0)
      .def_static("from_table", &AmbientSpace::from_table, py::arg("m"), py::arg("t"), py::arg("h"),
                  py::arg("fiber_curvature") = py::none())
      .def("with_window", &AmbientSpace::with_window)
      .def("with_base_point", &AmbientSpace::with_base_point)
      .def_property_readonly("kind", [](const AmbientSpace& s) { return to_string(s.kind()); })
      .def_property_readonly("dim", &AmbientSpace::dim)
      .def_property_readonly("description", &AmbientSpace::description)
      .def("working_window", [](const AmbientSpace& s) {
        const auto w = s.working_window();
        return py::make_tuple(w.lo, w.hi);
      })
      .def("sample", [](const AmbientSpace& s, double t) {
        const auto w = s.sample(t);
        return py::make_tuple(w.h, w.dh, w.d2h);
      })
      .def("horizon_radius", &AmbientSpace::horizon_radius)
      .def("potential_V", &AmbientSpace::potential_V)
      .def("t_of_r", &AmbientSpace::t_of_r)
      .def("r_of_t", &AmbientSpace::r_of_t)
      .def("flow_param_s", &AmbientSpace::flow_param_s)
      .def("t_of_s", &AmbientSpace::t_of_s)
      .def("eta_bar", &AmbientSpace::eta_bar)
      .def("__repr__", [](const AmbientSpace& s) { return "<AmbientSpace " + s.description() + ">"; });

  py::class_<SolitonProblem>(m, "SolitonProblem")
      .def(py::init(&make_problem), py::arg("space"), py::arg("c"))
      .def_readonly("space", &SolitonProblem::space)
      .def_readonly("c", &SolitonProblem::c)
      .def_readonly("m", &SolitonProblem::m)
      .def("zeta", [](const SolitonProblem& p, double t) { return zeta(p, t); });

  m.def(
      "find_slices",
      [](const SolitonProblem& p, int nodes) {
        SliceScanOptions o;
        o.nodes = nodes;
        const auto rep = find_soliton_slices(p, o);
        py::list roots;
        for (const auto& r : rep.roots) {
          py::dict d;
          d["t"] = r.t;
          d["multiplicity"] = r.multiplicity;
          d["zeta"] = r.zeta;
          d["r"] = r.r ? py::cast(*r.r) : py::none();
          roots.append(d);
        }
        py::dict out;
        out["roots"] = roots;
        out["window"] = py::make_tuple(rep.window.lo, rep.window.hi);
        out["degenerate"] = rep.degenerate;
        out["expected_roots"] = rep.closed_form ? py::cast(rep.closed_form->expected_roots()) : py::none();
        return out;
      },
      py::arg("problem"), py::arg("nodes") = 4096);

  m.def(
      "slice_analysis",
      [](int dim, double mass, double c, const std::string& family, int kbar) {
        SchwarzschildParams p;
        p.m = dim;
        p.mass = mass;
        p.family = family_from(family);
        p.kbar = kbar;
        const auto cf = schwarzschild_slice_analysis(p, c);
        py::dict d;
        d["verdict"] = to_string(cf.verdict);
        d["margin"] = cf.margin;
        d["expected_roots"] = cf.expected_roots();
        d["separator"] = cf.separator() ? py::cast(*cf.separator()) : py::none();
        return d;
      },
      py::arg("m"), py::arg("mass"), py::arg("c"), py::arg("family") = "plain", py::arg("kbar") = 0);

  m.def(
      "shoot",
      [](const SolitonProblem& p, double u0, double rho_max, const std::string& fiber, double rtol, int samples) {
        ShootOptions o;
        o.rtol = rtol;
        o.uniform_samples = samples;
        RadialSolution sol;
        {
          py::gil_scoped_release release;
          sol = shoot_radial(p, RadialModel{fiber_from_name(fiber, p), p.m}, u0, rho_max, o);
        }
        py::dict d;
        d["rho"] = sol.rho;
        d["u"] = sol.u;
        d["du"] = sol.du;
        d["verdict"] = to_string(sol.verdict);
        d["rho_end"] = sol.rho_end;
        d["f_u0"] = sol.f_u0;
        return d;
      },
      py::arg("problem"), py::arg("u0"), py::arg("rho_max"), py::arg("fiber") = "auto", py::arg("rtol") = 1e-9,
      py::arg("samples") = 1000);

  m.def(
      "curve_translator",
      [](double k, double lo, double hi, int samples) {
        const auto tc = curve_translator(k, {lo, hi}, samples);
        py::dict d;
        d["tau"] = tc.closed_form.curve.tau;
        d["point"] = tc.closed_form.curve.point;
        d["x_numeric"] = tc.x_numeric;
        d["max_deviation"] = tc.max_deviation;
        return d;
      },
      py::arg("k"), py::arg("lo"), py::arg("hi"), py::arg("samples") = 2001);

  m.def(
      "probe_entire",
      [](const SolitonProblem& p, double rho_max, int shots, const std::string& fiber, int jobs) {
        ProbeOptions o;
        o.jobs = jobs;
        ProbeReport rep;
        {
          py::gil_scoped_release release;
          rep = entire_graph_probe(p, RadialModel{fiber_from_name(fiber, p), p.m}, default_u0_grid(p, shots), rho_max, o);
        }
        py::list list;
        for (const auto& s : rep.shots) {
          py::dict d;
          d["u0"] = s.u0;
          d["verdict"] = to_string(s.verdict);
          d["u_max"] = s.u_max;
          d["bounded"] = s.bounded;
          d["constant"] = s.constant;
          list.append(d);
        }
        py::dict out;
        out["shots"] = list;
        out["slice_solutions"] = rep.slice_solutions;
        out["bounded_nonconstant"] = rep.bounded_nonconstant;
        out["summary"] = rep.summary;
        return out;
      },
      py::arg("problem"), py::arg("rho_max"), py::arg("shots") = 20, py::arg("fiber") = "auto", py::arg("jobs") = 1);

  m.def(
      "stability_potential",
      [](const SolitonProblem& p, const std::string& target, double t0) {
        const StabilityTarget tg = target == "equator"      ? StabilityTarget::equator()
                                   : target == "horosphere" ? StabilityTarget::horosphere()
                                                            : StabilityTarget::slice(t0);
        const auto pot = stability_potential(p, tg);
        py::dict d;
        d["t0"] = pot.t0;
        d["q"] = pot.q;
        d["zeta"] = pot.zeta;
        d["constant_curvature_form"] =
            pot.constant_curvature_form ? py::cast(*pot.constant_curvature_form) : py::none();
        return d;
      },
      py::arg("problem"), py::arg("target") = "slice", py::arg("t0") = 0.0);

  m.def(
      "lambda1",
      [](const py::object& v, const py::object& q, double a, double b, const std::string& boundary, int grid_n) {
        const SLProblem sl = sl_problem(v, q, a, b, boundary);
        SpectrumEstimate est;
        {
          py::gil_scoped_release release;
          est = lambda1_sl(sl, grid_n);
        }
        py::dict d;
        d["lambda1"] = est.lambda1;
        d["error"] = est.richardson_error;
        d["lambda1_extrapolated"] = est.lambda1_extrapolated;
        d["grid_n"] = est.grid_n;
        d["r"] = est.r;
        d["eigenfunction"] = est.eigenfunction;
        d["discrete_index"] = est.discrete_index;
        return d;
      },
      py::arg("v"), py::arg("q"), py::arg("a"), py::arg("b"), py::arg("boundary") = "dirichlet",
      py::arg("grid_n") = 256);

  m.def(
      "rayleigh_quotient",
      [](const py::object& v, const py::object& q, double a, double b, const std::string& boundary,
         const std::vector<double>& r, const std::vector<double>& phi) {
        return rayleigh_quotient(sl_problem(v, q, a, b, boundary), r, phi);
      },
      py::arg("v"), py::arg("q"), py::arg("a"), py::arg("b"), py::arg("boundary"), py::arg("r"), py::arg("phi"));

  m.def(
      "classify_growth",
      [](const std::string& profile, const std::string& kind, double r_min, double r_max) {
        const auto g = growth_classify({kind == "sphere-area" ? GrowthKind::SphereArea : GrowthKind::BallVolume,
                                        RadialFunction::parse(profile), r_min, r_max});
        py::dict d;
        d["degree"] = g.degree;
        d["alpha"] = g.alpha;
        d["exponential"] = g.exponential;
        d["subexponential"] = g.subexponential;
        d["subquadratic"] = g.subquadratic;
        d["quadratic"] = g.quadratic;
        d["parabolic_criterion"] = g.parabolic_criterion;
        d["brooks_higuchi_bound"] = g.brooks_higuchi_bound;
        return d;
      },
      py::arg("profile"), py::arg("kind") = "ball-volume", py::arg("r_min") = 1.0, py::arg("r_max") = 1e4);

  m.def(
      "critical_curve",
      [](const std::string& v, double r, double R) {
        return critical_curve(EndProfile{RadialFunction::parse(v), RadialFunction::power(0.0), R, {}}, r);
      },
      py::arg("v"), py::arg("r"), py::arg("R") = 1.0);

  m.def(
      "oscillation",
      [](const std::string& v, const std::string& A, double R, double r_max, std::optional<double> start,
         int min_zeros) {
        CauchyOptions o;
        o.start = start;
        const EndProfile e{RadialFunction::parse(v), RadialFunction::parse(A), R, {}};
        OscillationReport rep;
        {
          py::gil_scoped_release release;
          rep = is_oscillatory(e, r_max, min_zeros, o);
        }
        py::dict d;
        d["zeros"] = rep.zeros;
        d["oscillatory"] = rep.oscillatory;
        d["condition"] = to_string(rep.condition);
        d["diagnostics"] = rep.diagnostics;
        d["reciprocal_v"] = fit_dict(rep.reciprocal_v);
        d["mean_weighted"] = fit_dict(rep.mean_weighted);
        d["sqrt_gap"] = fit_dict(rep.sqrt_gap);
        return d;
      },
      py::arg("v"), py::arg("A"), py::arg("R") = 1.0, py::arg("r_max") = 1e4, py::arg("start") = py::none(),
      py::arg("min_zeros") = 3);

  m.def(
      "exact_residual",
      [](const std::string& kind, double k, int dim, double c, int sphere_dims) {
        ExactParams p;
        p.k = k;
        p.m = dim;
        p.c = c;
        p.sphere_dims = sphere_dims;
        return soliton_residual(exact_solution(exact_from(kind), p));
      },
      py::arg("kind"), py::arg("k") = 1.0, py::arg("m") = 2, py::arg("c") = -1.0, py::arg("sphere_dims") = 1);

  m.def(
      "run_command",
      [](const std::string& command, std::optional<std::string> config, std::optional<std::string> out,
         std::optional<std::string> format, std::optional<double> tol, bool force, int jobs) {
        CliOptions o;
        o.command = command;
        o.config_path = config;
        o.out_dir = out;
        o.format = format;
        o.tol = tol;
        o.force = force;
        o.jobs = jobs;
        std::ostringstream so, se;
        int code;
        {
          py::gil_scoped_release release;
          code = run_command(o, so, se);
        }
        return py::make_tuple(code, so.str(), se.str());
      },
      py::arg("command"), py::arg("config") = py::none(), py::arg("out") = py::none(), py::arg("format") = py::none(),
      py::arg("tol") = py::none(), py::arg("force") = false, py::arg("jobs") = 1);

  m.attr("__version__") = kVersion;
}

#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "mcfsol/ambient.hpp"

namespace mcfsol {

/// An ambient space together with a soliton constant c. The hypersurface
/// dimension m is the fiber dimension of the space.
struct SolitonProblem {
  AmbientSpace space;
  double c = 0.0;
  int m = 2;
};

SolitonProblem make_problem(const AmbientSpace& space, double c);

/// zeta_c(t) = m h'(t) + c h(t)^2.
double zeta(const SolitonProblem& problem, double t);
/// 1 + |m h'| + |c| h^2, the magnitude against which zeta is judged small.
double zeta_scale(const SolitonProblem& problem, double t);

// ---------------------------------------------------------------------------
// Slices

enum class SliceVerdict { None, Tangential, Two, Unavailable };

std::string to_string(SliceVerdict verdict);

/// Closed-form existence analysis of soliton slices in Schwarzschild-type
/// spaces. `margin` is relative: positive means two slices, zero a single
/// tangential one, negative none.
struct SliceClosedForm {
  SchwarzschildParams params;
  double c = 0.0;
  SliceVerdict verdict = SliceVerdict::None;
  double margin = 0.0;
  std::optional<double> r_star;         // plain: critical radius of V - c^2 r^4 / m^2
  std::optional<double> r_threshold;    // plain: (mass (m+3) / 2)^(1/(m-1))
  std::optional<double> discriminant;   // anti-de Sitter
  std::optional<double> r_star_plus;
  std::optional<double> r_star_minus;
  std::string note;

  /// Separator radius reported alongside the verdict.
  std::optional<double> separator() const { return r_star ? r_star : r_star_plus; }
  int expected_roots() const;
};

SliceClosedForm schwarzschild_slice_analysis(const SchwarzschildParams& params, double c);

struct SliceRoot {
  double t = 0.0;
  int multiplicity = 1;
  std::optional<double> r;  // Schwarzschild family only
  double zeta = 0.0;
  double scale = 1.0;
};

struct SliceReport {
  std::vector<SliceRoot> roots;
  Interval window;
  int nodes = 0;
  /// zeta vanishes identically on the window, so every slice is a soliton.
  bool degenerate = false;
  std::optional<SliceClosedForm> closed_form;
};

struct SliceScanOptions {
  int nodes = 4096;
  double dip_tolerance = 1e-8;
  std::optional<Interval> window;  // defaults to the working window
};

SliceReport find_soliton_slices(const SolitonProblem& problem, const SliceScanOptions& options = {});

// ---------------------------------------------------------------------------
// Fibers and graph residuals

/// Geometry of the fiber over which radial graphs are built.
enum class FiberGeometry { Flat, Hyperbolic, Spherical };

std::string to_string(FiberGeometry geometry);

/// Natural fiber of a space (Schwarzschild fibers are round spheres, the
/// anti-de Sitter family follows kbar).
FiberGeometry default_fiber(const AmbientSpace& space);

/// Mean curvature of the geodesic sphere of radius rho in the m-dimensional
/// fiber, times m: (m-1)/rho, (m-1) coth rho or (m-1) cot rho.
double fiber_sphere_term(FiberGeometry geometry, int m, double rho);

/// f(s) = zeta_c(t(s)), the forcing term of the graph equation.
double graph_forcing(const SolitonProblem& problem, double s);

// ---------------------------------------------------------------------------
// Exact solitons

enum class ExactKind {
  GrimReaperCurve,
  ShrinkerSphere,
  ShrinkerCylinder,
  HorosphereSlice,
  HypersphereSlice,
  BowlSeries,
};

std::string to_string(ExactKind kind);

/// Planar parametric curve samples with analytic first derivatives.
struct CurveSamples {
  std::vector<double> tau;
  std::vector<std::pair<double, double>> point;
  std::vector<std::pair<double, double>> tangent;
};

/// Radial graph s = u(rho) over a fiber, sampled with u' and u''.
struct RadialGraphSamples {
  FiberGeometry fiber = FiberGeometry::Flat;
  std::vector<double> rho;
  std::vector<double> u;
  std::vector<double> du;
  std::vector<double> d2u;
};

struct ExactParams {
  double k = 1.0;        // grim reaper speed
  int m = 2;
  int sphere_dims = 1;   // cylinder S^k x R^(m-k)
  double c = -1.0;
  double h0 = 1.0;       // product warping for the bowl series
  double u0 = 0.0;       // bowl series height at the axis
  double rho_max = 1e-3;  // bowl series sampling radius
  double edge = 0.05;    // grim reaper samples stay in |k tau| <= pi/2 - edge
  int samples = 2001;
};

struct ExactSoliton {
  ExactKind kind = ExactKind::GrimReaperCurve;
  std::vector<std::pair<std::string, double>> params;
  std::string orientation;
  CurveSamples curve;
  std::vector<double> slices;
  RadialGraphSamples graph;
  std::optional<SolitonProblem> problem;

  double param(const std::string& name) const;
};

ExactSoliton exact_solution(ExactKind kind, const ExactParams& params = {});

/// Bowl-type local expansion u0 + a rho^2 + b rho^4 of the rotational graph
/// through (0, u0); returns {a, b}.
std::pair<double, double> bowl_coefficients(const SolitonProblem& problem, double u0,
                                            FiberGeometry fiber = FiberGeometry::Flat);

/// Max over interior samples of |d theta / d tau + k y'|, theta the tangent
/// angle. Vanishes for the grim reaper x = -(1/k) log cos(k y).
double translator_curve_residual(const CurveSamples& curve, double k);

/// Max over interior samples of |c <X, nu> + curved_dims * kappa| for a
/// profile circle of a shrinker, nu the outward normal.
double shrinker_residual(const CurveSamples& curve, int curved_dims, double c);

/// Max over interior samples of the radial graph equation residual
/// |u'' - (1 + u'^2)(f(u) - H_rho u')|, u'' from central differences of u'.
double radial_graph_residual(const SolitonProblem& problem, const RadialGraphSamples& graph);

/// Residual of the soliton identity appropriate to the solution kind, for
/// the given problem (curves read k = c h0 from a product problem).
double soliton_residual(const SolitonProblem& problem, const ExactSoliton& solution);
/// Same, against the problem the solution was generated for.
double soliton_residual(const ExactSoliton& solution);

}  // namespace mcfsol

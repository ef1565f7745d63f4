#pragma once

#include <optional>
#include <string>
#include <vector>

#include "mcfsol/soliton.hpp"

namespace mcfsol {

/// Rotationally symmetric reduction over a model fiber.
struct RadialModel {
  FiberGeometry base = FiberGeometry::Flat;
  int m = 2;

  /// Radial divergence coefficient: (m-1)/rho, (m-1) coth rho, (m-1) cot rho.
  double snn(double rho) const { return fiber_sphere_term(base, m, rho); }
  /// Largest admissible radius (pi for spherical fibers).
  double rho_limit() const;

  static RadialModel for_problem(const SolitonProblem& problem);
};

enum class ShotVerdict { ReachedRhoMax, GradientBlowup, RangeExit, StepUnderflow };

std::string to_string(ShotVerdict verdict);

struct ShootOptions {
  double rtol = 1e-9;
  double atol = 1e-12;
  double epsilon = 1e-6;       // series start radius
  double blowup = 1e8;         // |u'| threshold
  double underflow = 1e-14;    // step floor relative to rho_max
  int uniform_samples = 1000;  // output grid on (0, rho_max]
  int pole_samples = 50;       // log-spaced output on [epsilon, 100 epsilon]
  std::optional<Interval> s_window;  // defaults to the space's s window
};

struct RadialSolution {
  std::vector<double> rho;
  std::vector<double> u;
  std::vector<double> du;
  ShotVerdict verdict = ShotVerdict::ReachedRhoMax;
  double rho_end = 0.0;  // rho_max or the radius where the verdict fired
  double u0 = 0.0;
  double f_u0 = 0.0;
  double rho_max = 0.0;
  RadialModel model;
  ShootOptions options;
  long steps = 0;

  /// Samples as a radial graph for the residual checks.
  RadialGraphSamples as_graph() const;
};

/// f(s) = zeta_c(t(s)).
double rhs_f(const SolitonProblem& problem, double s);

RadialSolution shoot_radial(const SolitonProblem& problem, const RadialModel& model, double u0,
                            double rho_max, const ShootOptions& options = {});

/// The plane translator curve integrated from its vertex next to the closed
/// form x = -(1/k) log cos(k tau).
struct TranslatorCurve {
  ExactSoliton closed_form;
  std::vector<double> x_numeric;
  double max_deviation = 0.0;
};

TranslatorCurve curve_translator(double k, Interval tau_window, int samples = 2001);

struct ShotSummary {
  double u0 = 0.0;
  ShotVerdict verdict = ShotVerdict::ReachedRhoMax;
  double rho_end = 0.0;
  double u_max = 0.0;
  double f_u0 = 0.0;
  bool bounded = false;
  bool constant = false;
};

struct ProbeOptions {
  ShootOptions shoot;
  int jobs = 1;
  /// A shot counts as bounded when u moves by at most this fraction of its
  /// total excursion over the last half of [0, rho_max].
  double tail_tolerance = 1e-3;
};

struct ProbeReport {
  std::vector<ShotSummary> shots;
  std::vector<double> slice_solutions;  // heights s with f(s) = 0
  bool every_slice_entire = false;      // f vanishes identically
  int bounded_nonconstant = 0;
  std::string summary;
};

ProbeReport entire_graph_probe(const SolitonProblem& problem, const RadialModel& model,
                               const std::vector<double>& u0_grid, double rho_max,
                               const ProbeOptions& options = {});

/// n heights spread over the interior of the s window.
std::vector<double> default_u0_grid(const SolitonProblem& problem, int n);

}  // namespace mcfsol

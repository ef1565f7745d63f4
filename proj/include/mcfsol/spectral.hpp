#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "mcfsol/profile.hpp"
#include "mcfsol/soliton.hpp"

namespace mcfsol {

// ---------------------------------------------------------------------------
// Stability potential

enum class StabilityTargetKind { Slice, Equator, Horosphere };

struct StabilityTarget {
  StabilityTargetKind kind = StabilityTargetKind::Slice;
  double t0 = 0.0;  // slices only

  static StabilityTarget slice(double t0) { return {StabilityTargetKind::Slice, t0}; }
  static StabilityTarget equator() { return {StabilityTargetKind::Equator, 0.0}; }
  static StabilityTarget horosphere() { return {StabilityTargetKind::Horosphere, 0.0}; }
};

std::string to_string(StabilityTargetKind kind);

/// Zeroth-order coefficient of the stability operator along a slice. It is
/// constant on the slice: q = |II|^2 + Ric(nu, nu) - c h'(t0) with
/// |II|^2 = m (h'/h)^2 and Ric(nu, nu) = -m h''/h.
struct StabilityPotential {
  StabilityTargetKind target = StabilityTargetKind::Slice;
  double t0 = 0.0;
  double q = 0.0;
  double second_fundamental_sq = 0.0;
  double ricci_normal = 0.0;
  double drift_term = 0.0;  // c h'(t0)
  /// zeta_c(t0); the slice is a soliton when this vanishes.
  double zeta = 0.0;
  /// m (kappa + h'^2) / h^2 when the space has constant curvature.
  std::optional<double> constant_curvature_form;

  std::function<double(double)> as_function() const;
};

StabilityPotential stability_potential(const SolitonProblem& problem, const StabilityTarget& target);

// ---------------------------------------------------------------------------
// Sturm-Liouville eigenvalues

enum class Boundary { Dirichlet, Neumann, Closed };

std::string to_string(Boundary boundary);

/// -(v z')'/v - q z = lambda z on [a, b] with weight v > 0.
struct SLProblem {
  std::function<double(double)> v;
  std::function<double(double)> q;
  Interval interval{0.0, 1.0};
  Boundary boundary = Boundary::Dirichlet;

  static SLProblem constant(double q, Interval interval, Boundary boundary);
};

struct SpectrumEstimate {
  /// Smallest discrete eigenvalue on the fine grid (2 grid_n cells); this is
  /// the Rayleigh quotient of `eigenfunction`.
  double lambda1 = 0.0;
  /// Richardson value (4 lambda(2n) - lambda(n)) / 3.
  double lambda1_extrapolated = 0.0;
  double lambda1_coarse = 0.0;
  /// |lambda(2n) - lambda(n)| / 3, the estimated discretization error of lambda1.
  double richardson_error = 0.0;
  int grid_n = 0;
  std::vector<double> r;
  /// Ground state, positive in the interior, max-normalized.
  std::vector<double> eigenfunction;
  /// Number of negative eigenvalues of the fine discretization. This is a
  /// discrete index only.
  int discrete_index = 0;
  Boundary boundary = Boundary::Dirichlet;
};

/// grid_n >= 16 cells; the fine grid has 2 grid_n cells.
SpectrumEstimate lambda1_sl(const SLProblem& problem, int grid_n);

/// Smallest eigenvalue of the discretization with exactly n cells.
double lambda1_discrete(const SLProblem& problem, int n);

/// (integral v phi'^2 - integral q v phi^2) / integral v phi^2 over the
/// sampled radii, gradient by midpoint differences and the rest trapezoidal.
double rayleigh_quotient(const SLProblem& problem, const std::vector<double>& r,
                         const std::vector<double>& phi);

// ---------------------------------------------------------------------------
// Volume growth

enum class GrowthKind { BallVolume, SphereArea };

std::string to_string(GrowthKind kind);

struct GrowthProfile {
  GrowthKind kind = GrowthKind::BallVolume;
  RadialFunction f = RadialFunction::power(1.0);
  double r_min = 1.0;
  double r_max = 1e4;
};

struct GrowthClassification {
  GrowthKind kind = GrowthKind::BallVolume;
  Interval tail;                 // fit window
  double degree = 0.0;           // log f ~ degree log r + c
  double degree_residual = 0.0;  // rms of that fit in log f
  double alpha = 0.0;            // log f ~ alpha r + c
  double alpha_residual = 0.0;
  bool exponential = false;      // the linear-in-r fit wins
  bool subexponential = false;
  bool subquadratic = false;     // ball volume o(r^2)
  bool quadratic = false;        // ball volume O(r^2)
  /// BallVolume: O(r^2) growth. SphereArea: 1/f not integrable at infinity.
  bool parabolic_criterion = false;
  double brooks_higuchi_bound = 0.0;  // alpha^2 / 4
  bool monotone = true;
};

/// Needs at least three decades of radius.
GrowthClassification growth_classify(const GrowthProfile& profile);

}  // namespace mcfsol

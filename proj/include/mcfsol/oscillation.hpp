#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "mcfsol/profile.hpp"

namespace mcfsol {

/// Model data of an end: weighted sphere area v and weighted spherical mean A
/// on [R, inf).
struct EndProfile {
  RadialFunction v = RadialFunction::power(0.0);
  RadialFunction A = RadialFunction::power(0.0);
  double R = 1.0;
  /// Extra radii where v or A may only be Lipschitz; the integrator restarts there.
  std::vector<double> kinks;
};

/// Integral of 1/v over [r, inf). Throws NonIntegrableTail when it diverges.
double reciprocal_tail(const EndProfile& profile, double r);

/// chi(r) = (2 v(r) int_r^inf ds / v)^-2.
double critical_curve(const EndProfile& profile, double r);

struct CauchyOptions {
  std::optional<double> start;  // defaults to 2R
  double z0 = 1.0;
  double w0 = 0.0;              // w = v z'
  double rtol = 1e-11;
  double atol = 1e-300;
  int samples = 2001;
  double zero_tol = 1e-10;
};

struct CauchySolution {
  std::vector<double> r;
  std::vector<double> z;
  std::vector<double> w;
  std::vector<double> zeros;
  double start = 0.0;
  double r_max = 0.0;
  long steps = 0;
};

/// (v z')' + A v z = 0 from `start` with z = z0, v z' = w0.
CauchySolution integrate_cauchy(const EndProfile& profile, double r_max, const CauchyOptions& options = {});

enum class OscillationCondition { MeanDivergence, GapDivergence, Neither };

std::string to_string(OscillationCondition condition);

/// Growth-rate test for an improper integral int_start^r g over the last two
/// decades of the window.
struct DivergenceFit {
  Interval window;
  double final_value = 0.0;
  double slope = 0.0;  // log-log slope of the running integral
  bool diverges = false;
};

struct OscillationReport {
  std::vector<double> zeros;
  bool oscillatory = false;
  int min_zeros = 3;
  OscillationCondition condition = OscillationCondition::Neither;
  std::vector<std::pair<double, double>> chi_samples;
  bool mean_nonnegative = false;
  bool reciprocal_integrable = false;
  DivergenceFit reciprocal_v;   // int 1/v
  DivergenceFit mean_weighted;  // int A v
  DivergenceFit sqrt_gap;       // int (sqrt A - sqrt chi)
  std::string diagnostics;
  CauchySolution solution;
};

inline constexpr double kDivergenceSlope = 0.05;

OscillationReport is_oscillatory(const EndProfile& profile, double r_max, int min_zeros = 3,
                                 const CauchyOptions& options = {});

/// True when strictly between consecutive zeros of one list there is exactly
/// one zero of the other, and vice versa.
bool zeros_interlace(const std::vector<double>& a, const std::vector<double>& b);

}  // namespace mcfsol

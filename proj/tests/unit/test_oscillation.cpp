#include <chrono>
#include <cmath>
#include <numbers>

#include "doctest.h"
#include "mcfsol/error.hpp"
#include "mcfsol/oscillation.hpp"

using namespace mcfsol;

namespace {

constexpr double kPi = std::numbers::pi;

EndProfile euler(double gamma, double R = 1.0) {
  return EndProfile{RadialFunction::power(2.0), RadialFunction::power(-2.0, gamma), R, {}};
}

// Zeros of (r^2 z')' + gamma z = 0, z(2) = 1, z'(2) = 0, gamma > 1/4:
// z = (r/2)^(-1/2) (cos(bL) + sin(bL) / (2b)), L = log(r/2), b = sqrt(gamma - 1/4).
double euler_zero(double gamma, int k) {
  const double b = std::sqrt(gamma - 0.25);
  return 2.0 * std::exp((kPi - std::atan(2.0 * b) + k * kPi) / b);
}

}  // namespace

TEST_CASE("critical curve examples and Hardy identity") {
  EndProfile m4{RadialFunction::power(3.0, 2.0 * kPi * kPi), RadialFunction::power(0.0), 1.0, {}};
  CHECK(critical_curve(m4, 2.0) == doctest::Approx(0.25).epsilon(1e-14));
  EndProfile sq{RadialFunction::power(2.0), RadialFunction::power(0.0), 1.0, {}};
  CHECK(critical_curve(sq, 10.0) == doctest::Approx(2.5e-3).epsilon(1e-14));
  EndProfile ex{RadialFunction::exponential(2.0), RadialFunction::power(0.0), 1.0, {}};
  for (double r : {1.0, 5.0, 40.0}) CHECK(critical_curve(ex, r) == doctest::Approx(1.0).epsilon(1e-14));

  for (int m = 3; m <= 6; ++m) {
    const double k = m - 1.0;
    EndProfile closed{RadialFunction::power(k), RadialFunction::power(0.0), 1.0, {}};
    EndProfile numeric{RadialFunction::callable([k](double r) { return std::pow(r, k); }, "r^k"),
                       RadialFunction::power(0.0), 1.0, {}};
    double worst_closed = 0.0, worst_numeric = 0.0;
    for (int i = 0; i <= 480; ++i) {
      const double r = 2.0 + 0.1 * i;
      const double hardy = (m - 2.0) * (m - 2.0) / (4.0 * r * r);
      worst_closed = std::max(worst_closed, std::abs(critical_curve(closed, r) / hardy - 1.0));
      worst_numeric = std::max(worst_numeric, std::abs(critical_curve(numeric, r) / hardy - 1.0));
    }
    CHECK(worst_closed < 1e-12);
    CHECK(worst_numeric < 1e-8);
  }

  // Table of r^3 with power-law extrapolation beyond the last row.
  std::vector<double> r, v;
  for (int i = 0; i <= 3000; ++i) {
    r.push_back(std::pow(10.0, 3.0 * i / 3000.0));
    v.push_back(std::pow(r.back(), 3.0));
  }
  EndProfile table{RadialFunction::table(r, v), RadialFunction::power(0.0), 1.0, {}};
  CHECK(critical_curve(table, 5.0) == doctest::Approx(1.0 / 25.0).epsilon(1e-6));

  for (const auto& bad : {RadialFunction::power(1.0), RadialFunction::power(0.0), RadialFunction::exponential(-1.0),
                          RadialFunction::callable([](double s) { return s; }, "r")}) {
    try {
      critical_curve(EndProfile{bad, RadialFunction::power(0.0), 1.0, {}}, 3.0);
      FAIL("expected NonIntegrableTail");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::NonIntegrableTail);
    }
  }
}

TEST_CASE("Cauchy problem examples") {
  EndProfile harmonic{RadialFunction::power(0.0), RadialFunction::power(0.0), 0.0, {}};
  auto sol = integrate_cauchy(harmonic, 10.0);
  REQUIRE(sol.zeros.size() == 3);
  for (int k = 0; k < 3; ++k) CHECK(std::abs(sol.zeros[k] - (k + 0.5) * kPi) < 1e-9);
  for (std::size_t i = 0; i < sol.r.size(); ++i) CHECK(std::abs(sol.z[i] - std::cos(sol.r[i])) < 1e-9);
  CHECK(sol.r.back() == 10.0);

  EndProfile flat{RadialFunction::power(0.0), RadialFunction::power(0.0, 0.0), 0.0, {}};
  auto constant = integrate_cauchy(flat, 10.0);
  CHECK(constant.zeros.empty());
  for (double z : constant.z) CHECK(z == 1.0);

  auto e1 = integrate_cauchy(euler(1.0), 1e8);
  REQUIRE(e1.zeros.size() >= 4);
  for (std::size_t k = 0; k < e1.zeros.size(); ++k) {
    CHECK(e1.zeros[k] == doctest::Approx(euler_zero(1.0, static_cast<int>(k))).epsilon(1e-8));
  }

  EndProfile broken{RadialFunction::callable([](double r) { return r - 5.0; }, "r-5"), RadialFunction::power(0.0),
                    1.0, {}};
  try {
    integrate_cauchy(broken, 10.0);
    FAIL("expected ProfileSingularity");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::ProfileSingularity);
  }
  EndProfile crossing{RadialFunction::callable([](double r) { return 5.0 - r; }, "5-r"), RadialFunction::power(0.0),
                      0.5, {}};
  CHECK_THROWS_AS(integrate_cauchy(crossing, 10.0), Error);
}

TEST_CASE("kinks restart the integrator") {
  EndProfile step{RadialFunction::power(0.0),
                  RadialFunction::callable([](double r) { return r < 5.0 ? 1.0 : 4.0; }, "step"), 0.0, {5.0}};
  auto sol = integrate_cauchy(step, 8.0);
  // z = cos r up to 5, then the solution of z'' + 4z = 0 matching value and slope.
  const double z5 = std::cos(5.0), dz5 = -std::sin(5.0);
  auto exact = [&](double r) { return r <= 5.0 ? std::cos(r) : z5 * std::cos(2 * (r - 5)) + 0.5 * dz5 * std::sin(2 * (r - 5)); };
  for (std::size_t i = 0; i < sol.r.size(); ++i) CHECK(std::abs(sol.z[i] - exact(sol.r[i])) < 1e-9);
}

TEST_CASE("Euler threshold and oscillation conditions") {
  // On [2, 1e4] the first zero for gamma = 0.26 lies near 1.2e13.
  CHECK(euler_zero(0.26, 0) > 1e13);
  auto short26 = is_oscillatory(euler(0.26), 1e4);
  CHECK(short26.zeros.empty());
  CHECK_FALSE(short26.oscillatory);
  CHECK(short26.condition == OscillationCondition::GapDivergence);
  auto short24 = is_oscillatory(euler(0.24), 1e4);
  CHECK(short24.zeros.empty());
  CHECK(short24.condition == OscillationCondition::Neither);

  // A window long enough for three zeros at gamma = 0.26.
  const double far = 1e45;
  int flips = 0;
  bool previous = false;
  for (double gamma : {0.20, 0.24, 0.26, 0.5, 1.0}) {
    auto rep = is_oscillatory(euler(gamma), far);
    if (gamma > 0.2 && rep.oscillatory != previous) ++flips;
    previous = rep.oscillatory;
    CHECK(rep.oscillatory == (gamma > 0.25));
    if (gamma == 0.26) {
      REQUIRE(rep.zeros.size() >= 3);
      for (int k = 0; k < 3; ++k) CHECK(rep.zeros[k] == doctest::Approx(euler_zero(0.26, k)).epsilon(1e-7));
    }
    for (std::size_t i = 1; i < rep.zeros.size(); ++i) CHECK(rep.zeros[i] > rep.zeros[i - 1]);
  }
  CHECK(flips == 1);

  EndProfile linear{RadialFunction::power(1.0), RadialFunction::power(0.0), 1.0, {}};
  auto rep = is_oscillatory(linear, 1e4);
  CHECK(rep.condition == OscillationCondition::MeanDivergence);
  CHECK(rep.reciprocal_v.diverges);
  CHECK(rep.mean_weighted.slope == doctest::Approx(2.0).epsilon(0.01));
  CHECK_FALSE(rep.reciprocal_integrable);
  CHECK(rep.chi_samples.empty());
  CHECK(rep.diagnostics.find("corroborated on window") != std::string::npos);

  auto r2 = is_oscillatory(euler(1.0), 1e4);
  REQUIRE_FALSE(r2.chi_samples.empty());
  for (auto [r, chi] : r2.chi_samples) CHECK(chi == doctest::Approx(0.25 / (r * r)).epsilon(1e-12));
}

TEST_CASE("Sturm separation and scaling covariance") {
  for (double gamma : {1.0, 3.0}) {
    CauchyOptions second;
    second.z0 = 0.0;
    second.w0 = 1.0;
    auto a = integrate_cauchy(euler(gamma), 1e8);
    auto b = integrate_cauchy(euler(gamma), 1e8, second);
    CHECK(a.zeros.size() >= 3);
    CHECK(zeros_interlace(a.zeros, b.zeros));
  }
  CHECK_FALSE(zeros_interlace({1.0, 2.0, 3.0}, {1.5, 1.7}));

  const double lambda = 7.5;
  EndProfile base = euler(1.0);
  EndProfile scaled{RadialFunction::power(2.0, lambda), base.A, base.R, {}};
  auto a = is_oscillatory(base, 1e6);
  auto b = is_oscillatory(scaled, 1e6);
  CHECK(a.oscillatory == b.oscillatory);
  CHECK(a.condition == b.condition);
  REQUIRE(a.zeros.size() == b.zeros.size());
  for (std::size_t i = 0; i < a.zeros.size(); ++i) CHECK(a.zeros[i] == doctest::Approx(b.zeros[i]).epsilon(1e-8));
  for (double r : {2.0, 17.0, 300.0}) CHECK(critical_curve(base, r) == doctest::Approx(critical_curve(scaled, r)).epsilon(1e-14));
}

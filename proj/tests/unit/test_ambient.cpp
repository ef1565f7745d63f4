#include <cmath>
#include <numbers>
#include <vector>

#include "doctest.h"
#include "mcfsol/ambient.hpp"
#include "mcfsol/error.hpp"

using namespace mcfsol;

namespace {

SchwarzschildParams plain(int m, double mass) {
  SchwarzschildParams p;
  p.m = m;
  p.mass = mass;
  return p;
}

SchwarzschildParams ads(int m, double mass, int kbar) {
  SchwarzschildParams p = plain(m, mass);
  p.family = SchwarzschildFamily::AntiDeSitter;
  p.kbar = kbar;
  return p;
}

SchwarzschildParams rn(int m, double mass, double charge) {
  SchwarzschildParams p = plain(m, mass);
  p.family = SchwarzschildFamily::ReissnerNordstrom;
  p.charge = charge;
  return p;
}

template <class F>
ErrorCode code_of(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an mcfsol::Error");
  return ErrorCode::ParseError;
}

}  // namespace

TEST_CASE("potential V and horizon radius") {
  auto s = make_schwarzschild(plain(3, 0.5));
  CHECK(s.potential_V(2.0) == doctest::Approx(0.75).epsilon(1e-15));
  CHECK(std::abs(s.potential_V(1.0)) < 1e-15);
  CHECK(std::abs(s.horizon_radius() - 1.0) < 1e-12);
  CHECK(std::abs(make_schwarzschild(plain(4, 0.5)).horizon_radius() - 1.0) < 1e-12);
  CHECK(std::abs(make_schwarzschild(ads(3, 0.5, 0)).horizon_radius() - 1.0) < 1e-12);
  CHECK(make_schwarzschild(ads(3, 0.5, 1)).potential_V(1.0) == doctest::Approx(1.0));

  // r^4 - r^2 - 1 = 0 for kbar = -1.
  const double golden = std::sqrt(0.5 * (1.0 + std::sqrt(5.0)));
  CHECK(std::abs(make_schwarzschild(ads(3, 0.5, -1)).horizon_radius() - golden) < 1e-12);

  // Outer root of (1 - r+/r)(1 - r-/r) for m = 2.
  const double q = 0.6;
  auto r = make_schwarzschild(rn(2, 1.0, q));
  CHECK(std::abs(r.horizon_radius() - (1.0 + std::sqrt(1.0 - q * q))) < 1e-12);
  CHECK(r.potential_dV(r.horizon_radius()) > 0.0);

  for (double mass : {0.1, 0.5, 2.0, 7.5}) {
    for (int m : {2, 3, 5}) {
      auto sp = make_schwarzschild(plain(m, mass));
      const double r0 = sp.horizon_radius();
      CHECK(std::abs(r0 - std::pow(2.0 * mass, 1.0 / (m - 1))) < 1e-12 * std::max(1.0, r0));
      CHECK(std::abs(1.0 - 2.0 * mass * std::pow(r0, 1.0 - m)) < 1e-12);
    }
  }
}

TEST_CASE("parameter validation") {
  CHECK(code_of([] { make_schwarzschild(plain(3, -1.0)); }) == ErrorCode::InvalidParams);
  CHECK(code_of([] { make_schwarzschild(plain(3, 0.0)); }) == ErrorCode::InvalidParams);
  CHECK(code_of([] { make_schwarzschild(plain(1, 0.5)); }) == ErrorCode::InvalidParams);
  CHECK(code_of([] { make_schwarzschild(rn(2, 1.0, 1.5)); }) == ErrorCode::InvalidParams);
  CHECK(code_of([] { make_schwarzschild(rn(2, 1.0, 1.0)); }) == ErrorCode::DegenerateHorizon);
  CHECK(code_of([] { make_schwarzschild(rn(3, 0.7, -0.7)); }) == ErrorCode::DegenerateHorizon);
  auto cone = AmbientSpace::euclidean_cone(3);
  CHECK(code_of([&] { cone.potential_V(1.0); }) == ErrorCode::WrongKind);
  CHECK(code_of([&] { cone.horizon_radius(); }) == ErrorCode::WrongKind);
  auto s = make_schwarzschild(plain(3, 0.5));
  CHECK(code_of([&] { s.t_of_r(1.0); }) == ErrorCode::OutOfDomain);
  CHECK(code_of([&] { s.t_of_r(0.5); }) == ErrorCode::OutOfDomain);
  CHECK(code_of([&] { s.r_of_t(0.0); }) == ErrorCode::OutOfDomain);
  CHECK(code_of([&] { s.r_of_t(-1.0); }) == ErrorCode::OutOfDomain);
}

TEST_CASE("t_of_r against closed-form antiderivatives") {
  // m = 3, mass = 1/2: t = sqrt(r^2 - 1).
  auto s = make_schwarzschild(plain(3, 0.5));
  CHECK(std::abs(s.t_of_r(2.0) - std::sqrt(3.0)) < 1e-10);
  CHECK(std::abs(s.t_of_r(std::sqrt(2.0)) - 1.0) < 1e-10);
  CHECK(s.t_of_r(1.0 + 1e-12) < 1e-5);
  CHECK(std::abs(s.r_of_t(std::sqrt(3.0)) - 2.0) < 1e-9);
  CHECK(std::abs(s.r_of_t(1.0) - std::sqrt(2.0)) < 1e-9);
  CHECK(std::abs(s.r_of_t(1e-9) - 1.0) < 1e-12);
  for (double r : {1.001, 1.1, 3.0, 17.0, 99.0, 500.0, 1e5}) {
    CHECK(std::abs(s.t_of_r(r) - std::sqrt(r * r - 1.0)) < 1e-8 * std::max(1.0, r));
  }

  // m = 2, mass = 1: t = sqrt(r(r-2)) + 2 log((sqrt r + sqrt(r-2)) / sqrt 2).
  auto s2 = make_schwarzschild(plain(2, 1.0));
  for (double r : {2.0001, 2.5, 4.0, 50.0, 150.0}) {
    const double exact =
        std::sqrt(r * (r - 2.0)) + 2.0 * std::log((std::sqrt(r) + std::sqrt(r - 2.0)) / std::sqrt(2.0));
    CHECK(std::abs(s2.t_of_r(r) - exact) < 1e-9);
  }

  // ADS m = 3, mass = 1/2, kbar = 0: t = acosh(r^2) / 2.
  auto a = make_schwarzschild(ads(3, 0.5, 0));
  for (double r : {1.0001, 1.5, 10.0, 1000.0}) {
    CHECK(std::abs(a.t_of_r(r) - 0.5 * std::acosh(r * r)) < 1e-9);
  }
}

TEST_CASE("round trips and monotonicity") {
  for (auto params : {plain(3, 0.5), plain(5, 2.0), ads(3, 0.5, 1), ads(4, 1.0, -1),
                      rn(3, 1.0, 0.5), rn(2, 1.0, 0.95)}) {
    auto s = make_schwarzschild(params);
    const double r0 = s.horizon_radius();
    double previous = -1.0;
    for (int i = 0; i <= 60; ++i) {
      const double r = r0 * (1.0 + 1e-3) * std::pow(100.0 / (r0 * 1.001), i / 60.0);
      if (r > 100.0) continue;
      const double t = s.t_of_r(r);
      CHECK(t > previous);
      previous = t;
      CHECK(std::abs(s.r_of_t(t) - r) < 1e-6 * std::max(1.0, r));
      CHECK(std::abs(s.t_of_r(s.r_of_t(t)) - t) < 1e-7);
    }
  }
}

TEST_CASE("Schwarzschild warping matches sqrt(V)") {
  for (auto params : {plain(3, 0.5), ads(3, 0.5, 0), rn(3, 1.0, 0.6)}) {
    auto s = make_schwarzschild(params);
    const auto w = s.working_window();
    for (int i = 0; i <= 40; ++i) {
      const double t = w.lo + (w.hi - w.lo) * std::pow(i / 40.0, 3.0);
      if (t <= 0.0) continue;
      const auto smp = s.sample(t);
      CHECK(std::abs(smp.h - s.r_of_t(t)) < 1e-9 * std::max(1.0, smp.h));
      CHECK(std::abs(smp.dh - std::sqrt(s.potential_V(smp.h))) < 1e-6);
      CHECK(std::abs(smp.d2h - 0.5 * s.potential_dV(smp.h)) < 1e-9 * std::max(1.0, smp.h));
    }
  }
}

TEST_CASE("derivatives agree with central differences") {
  std::vector<AmbientSpace> spaces = {
      AmbientSpace::euclidean_cone(3), AmbientSpace::hyperbolic_horosphere(2),
      AmbientSpace::hyperbolic_hypersphere(3), AmbientSpace::sphere_cone(4),
      AmbientSpace::product(2, 1.5), make_schwarzschild(plain(3, 0.5)),
      make_schwarzschild(ads(3, 0.5, 1))};
  for (const auto& sp : spaces) {
    const auto& w = sp.warping();
    const Interval win = sp.working_window();
    const double lo = std::max(win.lo, -5.0) + 0.05, hi = std::min(win.hi, 5.0) - 0.05;
    for (int i = 0; i <= 20; ++i) {
      const double t = lo + (hi - lo) * i / 20.0;
      const double step = 1e-4;
      const double fd1 = (w.evaluate(t + step) - w.evaluate(t - step)) / (2 * step);
      const double fd2 = (w.d1(t + step) - w.d1(t - step)) / (2 * step);
      CHECK(std::abs(fd1 - w.d1(t)) <= 1e-5 * std::max(1.0, std::abs(w.d1(t))));
      CHECK(std::abs(fd2 - w.d2(t)) <= 1e-5 * std::max(1.0, std::abs(w.d2(t))));
      CHECK(w.evaluate(t) > 0.0);
    }
  }
}

TEST_CASE("constant curvature identity") {
  std::vector<AmbientSpace> spaces = {
      AmbientSpace::euclidean_cone(3), AmbientSpace::hyperbolic_horosphere(3),
      AmbientSpace::hyperbolic_hypersphere(3), AmbientSpace::sphere_cone(3),
      AmbientSpace::product(3, 2.0)};
  for (const auto& sp : spaces) {
    const double kappa = *sp.fiber_curvature();
    const Interval win = sp.working_window();
    const double lo = std::max(win.lo, -3.0), hi = std::min(win.hi, 3.0);
    for (int i = 0; i <= 50; ++i) {
      const auto s = sp.sample(lo + (hi - lo) * i / 50.0);
      CHECK(std::abs(kappa + s.d2h * s.h - s.dh * s.dh) < 1e-8);
    }
  }
  CHECK_FALSE(make_schwarzschild(plain(3, 0.5)).fiber_curvature().has_value());
}

TEST_CASE("flow parameter s") {
  auto horo = AmbientSpace::hyperbolic_horosphere(3);
  CHECK(horo.flow_param_s(0.0) == doctest::Approx(-1.0).epsilon(1e-15));
  CHECK(horo.t_of_s(-1.0) == doctest::Approx(0.0).epsilon(1e-15));
  CHECK(AmbientSpace::product(3).flow_param_s(5.0) == doctest::Approx(5.0));
  auto sph = AmbientSpace::sphere_cone(3);
  CHECK(std::abs(sph.flow_param_s(std::numbers::pi / 2)) < 1e-15);
  CHECK(sph.flow_param_s(1.0) < 0.0);

  auto hyp = AmbientSpace::hyperbolic_hypersphere(2);
  CHECK(hyp.flow_param_s(1.0) == doctest::Approx(2.0 * std::atan(std::tanh(0.5))));
  const Interval sw = hyp.s_window();
  CHECK(sw.lo > -std::numbers::pi / 2);
  CHECK(sw.hi < std::numbers::pi / 2);

  // s = acosh(r) for m = 3, mass = 1/2, anchored at the horizon.
  auto s = make_schwarzschild(plain(3, 0.5));
  for (double r : {1.01, 2.0, 30.0}) {
    const double t = s.t_of_r(r);
    CHECK(std::abs(s.flow_param_s(t) - std::acosh(r)) < 1e-9);
    CHECK(std::abs(s.t_of_s(std::acosh(r)) - t) < 1e-8);
    const auto w = s.sample_at_s(std::acosh(r));
    CHECK(std::abs(w.h - r) < 1e-8 * r);
  }

  for (const auto& sp : {AmbientSpace::euclidean_cone(2), AmbientSpace::hyperbolic_hypersphere(2),
                         AmbientSpace::sphere_cone(2), horo,
                         make_schwarzschild(ads(3, 1.0, -1))}) {
    const Interval win = sp.working_window();
    double previous = -kInf;
    for (int i = 1; i < 30; ++i) {
      const double t = win.lo + (std::min(win.hi, win.lo + 20.0) - win.lo) * i / 30.0;
      const double sv = sp.flow_param_s(t);
      CHECK(sv > previous);
      previous = sv;
      // Where s saturates, representing s itself costs eps |s| h(t) in t.
      const double conditioning = 4e-16 * std::max(1.0, std::abs(sv)) * sp.sample(t).h;
      CHECK(std::abs(sp.t_of_s(sv) - t) < 1e-8 * std::max(1.0, std::abs(t)) + conditioning);
    }
  }

  auto anchored = AmbientSpace::euclidean_cone(3).with_base_point(2.0);
  CHECK(std::abs(anchored.flow_param_s(2.0)) < 1e-15);
  CHECK(anchored.flow_param_s(6.0) == doctest::Approx(std::log(3.0)));
}

TEST_CASE("potential eta_bar") {
  CHECK(AmbientSpace::euclidean_cone(3).eta_bar(3.0) == doctest::Approx(4.5));
  CHECK(AmbientSpace::hyperbolic_horosphere(3).with_base_point(0.0).eta_bar(1.0) ==
        doctest::Approx(std::exp(1.0) - 1.0));
  CHECK(AmbientSpace::hyperbolic_horosphere(3).eta_bar(1.0) == doctest::Approx(std::exp(1.0)));
  CHECK(AmbientSpace::sphere_cone(3).eta_bar(1.0) == doctest::Approx(1.0 - std::cos(1.0)));
  CHECK(AmbientSpace::product(2, 3.0).with_base_point(1.0).eta_bar(1.0) == 0.0);
  auto s = make_schwarzschild(plain(3, 0.5));
  for (double r : {1.5, 4.0}) {
    const double exact = 0.5 * (r * std::sqrt(r * r - 1.0) + std::acosh(r));
    CHECK(std::abs(s.eta_bar(s.t_of_r(r)) - exact) < 1e-9);
  }
  auto moved = s.with_base_point(s.t_of_r(2.0));
  CHECK(std::abs(moved.eta_bar(s.t_of_r(2.0))) < 1e-12);
}

TEST_CASE("table warping") {
  std::vector<double> t, h;
  for (int i = 0; i <= 400; ++i) {
    t.push_back(-2.0 + 4.0 * i / 400.0);
    h.push_back(std::cosh(t.back()));
  }
  auto tab = AmbientSpace::from_table(2, t, h, -1.0);
  CHECK(tab.anchors().s_base == doctest::Approx(0.0));
  for (double x : {-1.5, -0.3, 0.7, 1.9}) {
    const auto s = tab.sample(x);
    CHECK(std::abs(s.h - std::cosh(x)) < 1e-6);
    CHECK(std::abs(s.dh - std::sinh(x)) < 1e-3);
    CHECK(std::abs(tab.flow_param_s(x) - 2.0 * std::atan(std::tanh(0.5 * x))) < 1e-6);
    CHECK(std::abs(tab.eta_bar(x) - std::sinh(x)) < 1e-6);
    CHECK(std::abs(tab.t_of_s(tab.flow_param_s(x)) - x) < 1e-10);
  }
  CHECK(code_of([&] { tab.sample(2.5); }) == ErrorCode::OutOfDomain);
  CHECK(code_of([] { AmbientSpace::from_table(2, {0, 1}, {1, 1}); }) == ErrorCode::InvalidParams);
  CHECK(code_of([] { AmbientSpace::from_table(2, {0, 1, 1}, {1, 1, 1}); }) ==
        ErrorCode::InvalidParams);
  CHECK(code_of([] { AmbientSpace::from_table(2, {0, 1, 2}, {1, -1, 1}); }) ==
        ErrorCode::InvalidParams);
}

#include <cmath>
#include <numbers>
#include <vector>

#include "doctest.h"
#include "mcfsol/error.hpp"
#include "mcfsol/soliton.hpp"

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

// Roots of x^3 - 9x + 9 in (1, 3) by plain bisection.
std::vector<double> cubic_oracle() {
  auto g = [](double x) { return x * x * x - 9.0 * x + 9.0; };
  std::vector<double> roots;
  const int n = 2000;
  for (int i = 0; i < n; ++i) {
    double a = 1.0 + 2.0 * i / n, b = 1.0 + 2.0 * (i + 1) / n;
    if (g(a) * g(b) > 0.0) continue;
    for (int k = 0; k < 200; ++k) {
      const double mid = 0.5 * (a + b);
      (g(a) * g(mid) <= 0.0 ? b : a) = mid;
    }
    roots.push_back(0.5 * (a + b));
  }
  return roots;
}

// Count of solutions r > r0 of V(r) = c^2 r^4 / m^2 with m sqrt(V) = -c r^2,
// by a dense independent sign scan of m^2 V - c^2 r^4 in log r.
int brute_force_count(const SchwarzschildParams& p, double c) {
  auto V = [&](double r) {
    double v = 1.0 - 2.0 * p.mass * std::pow(r, 1.0 - p.m);
    if (p.family == SchwarzschildFamily::AntiDeSitter) v += p.kbar - 1.0 + r * r;
    return v;
  };
  if (c >= 0.0) return 0;
  auto g = [&](double r) { return p.m * p.m * V(r) - c * c * r * r * r * r; };
  int count = 0;
  double prev = g(1e-3);
  for (int i = 1; i <= 40000; ++i) {
    const double r = 1e-3 * std::pow(1e7, i / 40000.0);
    const double cur = g(r);
    if ((prev < 0.0) != (cur < 0.0)) ++count;
    prev = cur;
  }
  return count;
}

}  // namespace

TEST_CASE("zeta examples and affine dependence on c") {
  auto horo = make_problem(AmbientSpace::hyperbolic_horosphere(2), -2.0);
  CHECK(std::abs(zeta(horo, 0.0)) < 1e-15);
  auto hyp = make_problem(AmbientSpace::hyperbolic_hypersphere(3), 0.0);
  CHECK(zeta(hyp, 0.0) == 0.0);
  auto prod = make_problem(AmbientSpace::product(2), 0.7);
  CHECK(zeta(prod, 3.0) == doctest::Approx(0.7));

  for (const auto& space : {AmbientSpace::sphere_cone(3), AmbientSpace::hyperbolic_hypersphere(2),
                            make_schwarzschild(plain(3, 0.5))}) {
    auto p0 = make_problem(space, 0.0);
    for (double c : {-2.0, 0.5}) {
      auto pc = make_problem(space, c);
      for (double t : {0.3, 1.1, 2.0}) {
        const double h = space.sample(t).h;
        CHECK(zeta(pc, t) == doctest::Approx(zeta(p0, t) + c * h * h).epsilon(1e-14));
      }
    }
  }
  SolitonProblem bad{AmbientSpace::product(2), 1.0, 3};
  CHECK_THROWS_AS(zeta(bad, 0.0), Error);
}

TEST_CASE("horosphere and hypersphere slices") {
  auto r = find_soliton_slices(make_problem(AmbientSpace::hyperbolic_horosphere(2), -2.0));
  REQUIRE(r.roots.size() == 1);
  CHECK(std::abs(r.roots[0].t) < 1e-12);

  for (double c : {-1.0, -5.0, -0.3}) {
    auto rep = find_soliton_slices(make_problem(AmbientSpace::hyperbolic_horosphere(2), c));
    REQUIRE(rep.roots.size() == 1);
    CHECK(std::abs(rep.roots[0].t - std::log(-2.0 / c)) < 1e-10);
  }
  for (double c : {0.0, 0.5, 3.0}) {
    CHECK(find_soliton_slices(make_problem(AmbientSpace::hyperbolic_horosphere(2), c)).roots.empty());
  }

  CHECK(find_soliton_slices(make_problem(AmbientSpace::hyperbolic_hypersphere(2), 2.0)).roots.empty());
  CHECK(find_soliton_slices(make_problem(AmbientSpace::hyperbolic_hypersphere(2), 1.1)).roots.empty());
  auto zero = find_soliton_slices(make_problem(AmbientSpace::hyperbolic_hypersphere(2), 0.0));
  REQUIRE(zero.roots.size() == 1);
  CHECK(std::abs(zero.roots[0].t) < 1e-12);

  for (double c : {0.4, -0.9}) {
    const double m = 2.0;
    auto rep = find_soliton_slices(make_problem(AmbientSpace::hyperbolic_hypersphere(2), c));
    std::vector<double> expected = {std::asinh((-m + std::sqrt(m * m - 4 * c * c)) / (2 * c)),
                                    std::asinh((-m - std::sqrt(m * m - 4 * c * c)) / (2 * c))};
    std::sort(expected.begin(), expected.end());
    REQUIRE(rep.roots.size() == 2);
    CHECK(rep.roots[0].t == doctest::Approx(expected[0]).epsilon(1e-10));
    CHECK(rep.roots[1].t == doctest::Approx(expected[1]).epsilon(1e-10));
  }
  // |c| = m/2 is tangential.
  auto tang = find_soliton_slices(make_problem(AmbientSpace::hyperbolic_hypersphere(2), -1.0));
  REQUIRE(tang.roots.size() == 1);
  CHECK(tang.roots[0].multiplicity == 2);
  CHECK(std::abs(tang.roots[0].t - std::asinh(1.0)) < 1e-6);

  auto flat = find_soliton_slices(make_problem(AmbientSpace::product(3), 0.0));
  CHECK(flat.degenerate);
  CHECK(flat.roots.empty());
  CHECK(find_soliton_slices(make_problem(AmbientSpace::product(3), -1.0)).roots.empty());
}

TEST_CASE("Schwarzschild slices against the cubic oracle") {
  auto space = make_schwarzschild(plain(3, 0.5));
  auto rep = find_soliton_slices(make_problem(space, -1.0));
  const auto xs = cubic_oracle();
  REQUIRE(xs.size() == 2);
  REQUIRE(rep.roots.size() == 2);
  for (int i = 0; i < 2; ++i) {
    CHECK(std::abs(*rep.roots[i].r - std::sqrt(xs[i])) < 1e-9);
    CHECK(std::abs(rep.roots[i].t - space.t_of_r(std::sqrt(xs[i]))) < 1e-8);
    CHECK(std::abs(rep.roots[i].zeta) < 1e-9 * rep.roots[i].scale);
  }
  CHECK(std::abs(*rep.roots[0].r - 1.0885) < 1e-3);
  CHECK(std::abs(*rep.roots[1].r - 1.4923) < 1e-3);
  REQUIRE(rep.closed_form);
  CHECK(rep.closed_form->verdict == SliceVerdict::Two);
  const double r_star = *rep.closed_form->r_star;
  CHECK(r_star == doctest::Approx(std::pow(4.5, 1.0 / 6.0)).epsilon(1e-14));
  CHECK(*rep.roots[0].r < r_star);
  CHECK(*rep.roots[1].r > r_star);

  // Sign pattern: negative at the horizon, positive between the slices,
  // negative beyond.
  auto p = make_problem(space, -1.0);
  const double t1 = rep.roots[0].t, t2 = rep.roots[1].t;
  for (int i = 1; i < 50; ++i) {
    const double a = t1 * i / 50.0;
    const double b = t1 + (t2 - t1) * i / 50.0;
    const double d = t2 + 10.0 * i / 50.0;
    CHECK(zeta(p, a) < 0.0);
    CHECK(zeta(p, b) > 0.0);
    CHECK(zeta(p, d) < 0.0);
  }
}

TEST_CASE("closed-form slice analysis") {
  auto two = schwarzschild_slice_analysis(plain(3, 0.5), -1.0);
  CHECK(two.verdict == SliceVerdict::Two);
  CHECK(*two.r_star == doctest::Approx(1.2849).epsilon(1e-4));

  const double c_eq = -2.0 / std::sqrt(3.0);
  auto eq = schwarzschild_slice_analysis(plain(3, 0.5), c_eq);
  CHECK(eq.verdict == SliceVerdict::Tangential);
  CHECK(*eq.r_star == doctest::Approx(std::sqrt(1.5)).epsilon(1e-14));
  CHECK(*eq.r_threshold == doctest::Approx(std::sqrt(1.5)).epsilon(1e-14));
  auto rep = find_soliton_slices(make_problem(make_schwarzschild(plain(3, 0.5)), c_eq));
  REQUIRE(rep.roots.size() == 1);
  CHECK(rep.roots[0].multiplicity == 2);
  CHECK(std::abs(*rep.roots[0].r - std::sqrt(1.5)) < 1e-5);

  CHECK(schwarzschild_slice_analysis(plain(3, 0.5), 1.0).verdict == SliceVerdict::None);
  CHECK(schwarzschild_slice_analysis(plain(3, 0.5), 0.0).verdict == SliceVerdict::None);
  SchwarzschildParams charged = plain(3, 1.0);
  charged.family = SchwarzschildFamily::ReissnerNordstrom;
  charged.charge = 0.5;
  CHECK(schwarzschild_slice_analysis(charged, -1.0).verdict == SliceVerdict::Unavailable);
  CHECK(schwarzschild_slice_analysis(charged, 1.0).verdict == SliceVerdict::None);
  CHECK_THROWS_AS(schwarzschild_slice_analysis(plain(3, -1.0), -1.0), Error);
}

TEST_CASE("closed-form verdicts agree with independent root counts") {
  for (int m : {3, 4}) {
    for (int family = 0; family < 4; ++family) {
      for (int i = 0; i < 6; ++i) {
        for (int j = 0; j < 6; ++j) {
          const double mass = 0.1 + 1.9 * i / 5.0;
          const double c = -3.0 + 2.95 * j / 5.0;
          const auto params = family == 0 ? plain(m, mass) : ads(m, mass, family - 2);
          const auto cf = schwarzschild_slice_analysis(params, c);
          if (std::abs(cf.margin) < 1e-6) continue;
          CHECK(cf.expected_roots() == brute_force_count(params, c));
        }
      }
    }
  }
}

TEST_CASE("numeric slice counts match the closed form on a grid") {
  int checked = 0;
  for (int m : {3, 4}) {
    for (int i = 0; i < 10; ++i) {
      for (int j = 0; j < 10; ++j) {
        const double mass = 0.1 + 1.9 * i / 9.0;
        const double c = -3.0 + 2.95 * j / 9.0;
        for (auto params : {plain(m, mass), ads(m, mass, 1)}) {
          const auto space = make_schwarzschild(params);
          const auto rep = find_soliton_slices(make_problem(space, c));
          if (std::abs(rep.closed_form->margin) < 1e-6) continue;
          CHECK(static_cast<int>(rep.roots.size()) == rep.closed_form->expected_roots());
          for (const auto& root : rep.roots) {
            CHECK(std::abs(root.zeta) < 1e-9 * root.scale);
          }
          ++checked;
        }
      }
    }
  }
  CHECK(checked > 350);
}

TEST_CASE("exact solitons") {
  ExactParams gp;
  gp.k = 1.0;
  auto gr = exact_solution(ExactKind::GrimReaperCurve, gp);
  CHECK(gr.curve.tau.size() == 2001);
  const auto mid = gr.curve.point[1000];
  CHECK(std::abs(mid.first) < 1e-15);
  CHECK(std::abs(mid.second) < 1e-15);
  // x(pi/4) = log(2) / 2.
  CHECK(-std::log(std::cos(std::numbers::pi / 4)) == doctest::Approx(0.5 * std::log(2.0)));
  for (double k : {0.5, 1.0, 2.0}) {
    gp.k = k;
    auto g = exact_solution(ExactKind::GrimReaperCurve, gp);
    CHECK(soliton_residual(g) < 1e-8);
    // Wrong speed is detected.
    CHECK(translator_curve_residual(g.curve, 1.1 * k) > 0.05 * k);
  }

  ExactParams sp;
  for (int m : {2, 3}) {
    sp.m = m;
    sp.c = -1.0;
    auto s = exact_solution(ExactKind::ShrinkerSphere, sp);
    CHECK(s.param("radius") == doctest::Approx(std::sqrt(m)));
    CHECK(soliton_residual(s) < 1e-10);
    CHECK(shrinker_residual(s.curve, m, -1.3) > 0.1);
  }
  sp.m = 2;
  sp.sphere_dims = 1;
  auto cyl = exact_solution(ExactKind::ShrinkerCylinder, sp);
  CHECK(cyl.param("radius") == doctest::Approx(1.0));
  CHECK(soliton_residual(cyl) < 1e-10);
  sp.c = 0.5;
  CHECK_THROWS_AS(exact_solution(ExactKind::ShrinkerSphere, sp), Error);

  ExactParams hp;
  hp.m = 2;
  hp.c = -2.0;
  auto horo = exact_solution(ExactKind::HorosphereSlice, hp);
  CHECK(horo.slices[0] == doctest::Approx(0.0));
  CHECK(soliton_residual(horo) < 1e-15);
  hp.c = 0.75;
  auto hyp = exact_solution(ExactKind::HypersphereSlice, hp);
  CHECK(hyp.slices.size() == 2);
  CHECK(soliton_residual(hyp) < 1e-14);

  ExactParams bp;
  bp.m = 3;
  bp.c = 1.0;
  auto bowl = exact_solution(ExactKind::BowlSeries, bp);
  CHECK(bowl.param("a") == doctest::Approx(1.0 / 6.0));
  CHECK(soliton_residual(bowl) < 1e-8);

  // A vertical line is a minimal curve.
  CurveSamples line;
  for (int i = 0; i < 11; ++i) {
    line.tau.push_back(i);
    line.point.emplace_back(0.0, i);
    line.tangent.emplace_back(0.0, 1.0);
  }
  CHECK(translator_curve_residual(line, 0.0) == 0.0);
  CurveSamples tiny;
  tiny.tau = {0.0};
  tiny.point = {{0.0, 0.0}};
  tiny.tangent = {{0.0, 1.0}};
  try {
    translator_curve_residual(tiny, 0.0);
    FAIL("expected InsufficientSamples");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::InsufficientSamples);
  }
}

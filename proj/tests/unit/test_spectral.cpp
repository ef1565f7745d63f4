#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "mcfsol/error.hpp"
#include "mcfsol/spectral.hpp"

using namespace mcfsol;

namespace {

constexpr double kPi = std::numbers::pi;

SLProblem weighted(std::function<double(double)> v, std::function<double(double)> q, Interval iv, Boundary b) {
  return SLProblem{std::move(v), std::move(q), iv, b};
}

std::vector<double> uniform(double a, double b, int n) {
  std::vector<double> r(n + 1);
  for (int i = 0; i <= n; ++i) r[i] = a + (b - a) * i / n;
  return r;
}

}  // namespace

TEST_CASE("stability potential examples") {
  for (double c : {-1.0, 0.0, 3.0}) {
    auto eq = stability_potential(make_problem(AmbientSpace::sphere_cone(2), c), StabilityTarget::equator());
    CHECK(eq.q == doctest::Approx(2.0).epsilon(1e-14));
    CHECK(eq.t0 == doctest::Approx(kPi / 2));
  }
  auto horo = stability_potential(make_problem(AmbientSpace::hyperbolic_horosphere(2), -2.0),
                                  StabilityTarget::horosphere());
  CHECK(std::abs(horo.t0) < 1e-15);
  CHECK(horo.q == doctest::Approx(2.0));
  CHECK(horo.second_fundamental_sq == doctest::Approx(2.0));
  CHECK(horo.ricci_normal == doctest::Approx(-2.0));
  CHECK(horo.drift_term == doctest::Approx(-2.0));
  CHECK(std::abs(horo.zeta) < 1e-14);

  auto prod = stability_potential(make_problem(AmbientSpace::product(3), 0.0), StabilityTarget::slice(0.4));
  CHECK(prod.q == 0.0);

  CHECK_THROWS_AS(stability_potential(make_problem(AmbientSpace::product(2), 0.0), StabilityTarget::equator()),
                  Error);
  CHECK_THROWS_AS(stability_potential(make_problem(AmbientSpace::hyperbolic_horosphere(2), 1.0),
                                      StabilityTarget::horosphere()),
                  Error);
  CHECK_THROWS_AS(stability_potential(make_problem(AmbientSpace::sphere_cone(2), 0.0), StabilityTarget::slice(4.0)),
                  Error);
}

TEST_CASE("soliton slices in constant curvature match m (kappa + h'^2) / h^2") {
  const double t0 = 1.5;
  for (int m : {2, 3}) {
    auto cone = make_problem(AmbientSpace::euclidean_cone(m), -m / (t0 * t0));
    auto p = stability_potential(cone, StabilityTarget::slice(t0));
    CHECK(std::abs(p.zeta) < 1e-13);
    CHECK(p.q == doctest::Approx(2.0 * m / (t0 * t0)));
    CHECK(p.q == doctest::Approx(*p.constant_curvature_form));

    const double c = -m * std::sinh(t0) / std::pow(std::cosh(t0), 2);
    auto hyp = stability_potential(make_problem(AmbientSpace::hyperbolic_hypersphere(m), c),
                                   StabilityTarget::slice(t0));
    CHECK(std::abs(hyp.zeta) < 1e-13);
    CHECK(hyp.q == doctest::Approx(*hyp.constant_curvature_form).epsilon(1e-12));

    const double cs = -m * std::cos(1.0) / std::pow(std::sin(1.0), 2);
    auto sph = stability_potential(make_problem(AmbientSpace::sphere_cone(m), cs), StabilityTarget::slice(1.0));
    CHECK(sph.q == doctest::Approx(*sph.constant_curvature_form).epsilon(1e-12));
  }
}

TEST_CASE("lambda1 examples") {
  auto dir = lambda1_sl(SLProblem::constant(0.0, {0.0, 1.0}, Boundary::Dirichlet), 512);
  CHECK(std::abs(dir.lambda1 - kPi * kPi) < 1e-3);
  CHECK(std::abs(dir.lambda1_extrapolated - kPi * kPi) < 1e-7);
  CHECK(dir.richardson_error > 0.0);
  CHECK(dir.richardson_error < 1e-4);
  CHECK(dir.discrete_index == 0);

  for (Boundary b : {Boundary::Neumann, Boundary::Closed}) {
    for (double m : {2.0, 3.0}) {
      auto est = lambda1_sl(SLProblem::constant(m, {0.0, kPi}, b), 64);
      CHECK(std::abs(est.lambda1 + m) < 1e-12 * m);
      for (double z : est.eigenfunction) CHECK(z == doctest::Approx(1.0).epsilon(1e-9));
      CHECK(est.discrete_index == 2);  // k^2 - m < 0 for k = 0, 1
    }
  }

  // v = r^2 on [1, 2]: z = y / r turns the operator into -y'', so lambda1 = pi^2.
  auto sq = weighted([](double r) { return r * r; }, [](double) { return 0.0; }, {1.0, 2.0}, Boundary::Dirichlet);
  auto est = lambda1_sl(sq, 256);
  CHECK(std::abs(est.lambda1 - kPi * kPi) / (kPi * kPi) < 1e-3);
  CHECK(std::abs(est.lambda1_extrapolated - kPi * kPi) < 1e-6);
  const double dense = lambda1_discrete(sq, 8192);
  CHECK(std::abs(est.lambda1 - dense) / dense < 1e-3);

  CHECK_THROWS_AS(lambda1_sl(sq, 8), Error);
  auto bad = weighted([](double r) { return r - 1.5; }, [](double) { return 0.0; }, {1.0, 2.0}, Boundary::Dirichlet);
  try {
    lambda1_sl(bad, 32);
    FAIL("expected NonPositiveWeight");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NonPositiveWeight);
  }
}

TEST_CASE("rayleigh quotient examples") {
  auto dir = SLProblem::constant(0.0, {0.0, 1.0}, Boundary::Dirichlet);
  auto r = uniform(0.0, 1.0, 20000);
  std::vector<double> phi(r.size());
  for (std::size_t i = 0; i < r.size(); ++i) phi[i] = std::sin(kPi * r[i]);
  phi.back() = 0.0;
  CHECK(std::abs(rayleigh_quotient(dir, r, phi) - kPi * kPi) < 1e-6);

  // Bump on [0, 10] against q = m = 2.
  auto horo = SLProblem::constant(2.0, {0.0, 10.0}, Boundary::Dirichlet);
  auto rb = uniform(0.0, 10.0, 2000);
  std::vector<double> bump(rb.size());
  for (std::size_t i = 0; i < rb.size(); ++i) {
    const double x = rb[i];
    bump[i] = (x > 0.0 && x < 10.0) ? std::exp(-1.0 / (x * (10.0 - x))) : 0.0;
  }
  CHECK(rayleigh_quotient(horo, rb, bump) < 0.0);

  std::mt19937 gen(7);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<double> g(rb.size());
    for (std::size_t i = 1; i + 1 < g.size(); ++i) g[i] = u(gen);
    auto zero = SLProblem::constant(0.0, {0.0, 10.0}, Boundary::Dirichlet);
    CHECK(rayleigh_quotient(zero, rb, g) >= 0.0);
    // Upper bound for the discrete lambda1 on the same grid.
    CHECK(rayleigh_quotient(horo, rb, g) >= lambda1_discrete(horo, 2000) - 1e-9);
  }

  std::vector<double> zeros(rb.size(), 0.0);
  CHECK_THROWS_AS(rayleigh_quotient(horo, rb, zeros), Error);
  std::vector<double> ones(rb.size(), 1.0);
  CHECK_THROWS_AS(rayleigh_quotient(horo, rb, ones), Error);
}

TEST_CASE("spectral invariants") {
  std::vector<SLProblem> problems = {
      weighted([](double r) { return r * r; }, [](double r) { return std::sin(r); }, {1.0, 3.0}, Boundary::Dirichlet),
      weighted([](double r) { return std::exp(-r); }, [](double r) { return 1.0 / (1.0 + r); }, {0.0, 2.0},
               Boundary::Neumann),
      weighted([](double r) { return 2.0 + std::cos(r); }, [](double r) { return 0.7 * r; }, {0.0, 4.0},
               Boundary::Closed),
  };
  for (const auto& p : problems) {
    auto est = lambda1_sl(p, 200);
    // Variational consistency.
    CHECK(std::abs(rayleigh_quotient(p, est.r, est.eigenfunction) - est.lambda1) <= 1e-8 * std::abs(est.lambda1));
    // Ground state is positive inside.
    for (std::size_t i = 1; i + 1 < est.eigenfunction.size(); ++i) CHECK(est.eigenfunction[i] > 0.0);
    // Second order: successive differences shrink by about 4.
    const double l1 = lambda1_discrete(p, 64), l2 = lambda1_discrete(p, 128), l3 = lambda1_discrete(p, 256);
    const double ratio = (l1 - l2) / (l2 - l3);
    CHECK(ratio == doctest::Approx(4.0).epsilon(0.05));
    // Constant potential shift.
    for (double shift : {-3.0, 0.5, 10.0}) {
      SLProblem shifted = p;
      shifted.q = [q = p.q, shift](double r) { return q(r) + shift; };
      CHECK(std::abs(lambda1_discrete(shifted, 128) - (l2 - shift)) < 1e-10);
    }
  }

  // Domain monotonicity for Dirichlet problems.
  auto v = [](double r) { return r * r; };
  auto q = [](double r) { return 3.0 / r; };
  double previous = -kInf;
  for (double b : {6.0, 5.0, 4.0, 3.0, 2.5}) {
    const double lambda = lambda1_sl(weighted(v, q, {1.0, b}, Boundary::Dirichlet), 400).lambda1_extrapolated;
    CHECK(lambda >= previous);
    previous = lambda;
  }
}

TEST_CASE("growth classification") {
  auto ball15 = growth_classify({GrowthKind::BallVolume, RadialFunction::power(1.5, 3.0)});
  CHECK(ball15.degree == doctest::Approx(1.5).epsilon(1e-10));
  CHECK(ball15.subquadratic);
  CHECK(ball15.quadratic);
  CHECK(ball15.subexponential);
  CHECK_FALSE(ball15.exponential);

  auto r2 = growth_classify({GrowthKind::SphereArea, RadialFunction::power(1.0, 2.0 * kPi)});
  CHECK(r2.parabolic_criterion);
  auto r3 = growth_classify({GrowthKind::SphereArea, RadialFunction::power(2.0, 4.0 * kPi)});
  CHECK_FALSE(r3.parabolic_criterion);

  auto e2 = growth_classify({GrowthKind::BallVolume, RadialFunction::exponential(2.0)});
  CHECK(e2.exponential);
  CHECK(e2.alpha == doctest::Approx(2.0).epsilon(1e-10));
  CHECK(e2.brooks_higuchi_bound == doctest::Approx(1.0).epsilon(1e-10));
  CHECK_FALSE(e2.subexponential);
  CHECK_FALSE(e2.parabolic_criterion);

  auto quad = growth_classify({GrowthKind::BallVolume, RadialFunction::power(2.0, kPi)});
  CHECK(quad.quadratic);
  CHECK_FALSE(quad.subquadratic);

  // r^2 log r is not O(r^2).
  auto rlog = growth_classify({GrowthKind::BallVolume,
                               RadialFunction::callable([](double r) { return r * r * std::log(1.0 + r); }, "r2log")});
  CHECK_FALSE(rlog.quadratic);
  CHECK(rlog.subexponential);

  GrowthProfile short_tail{GrowthKind::BallVolume, RadialFunction::power(2.0), 1.0, 500.0};
  try {
    growth_classify(short_tail);
    FAIL("expected InsufficientTail");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::InsufficientTail);
  }
}

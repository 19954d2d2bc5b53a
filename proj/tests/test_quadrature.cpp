#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <limits>
#include <numbers>

#include "acasimir/quadrature.hpp"
#include "oracles.hpp"

using namespace acasimir;
using std::numbers::pi;

TEST_CASE("adaptive_integrate examples") {
  QuadratureSettings s;
  const auto unit = adaptive_integrate([](double, double) { return 1.0; }, Rectangle{{0, 1}, {0, 1}},
                                       {std::nullopt, std::nullopt}, s);
  CHECK(unit.value == doctest::Approx(1.0).epsilon(2e-16));
  CHECK(unit.converged);

  const auto osc = adaptive_integrate([](double u) { return std::cos(50.0 * u); }, Interval{0, 1}, 50.0, s);
  CHECK(osc.value == doctest::Approx(std::sin(50.0) / 50.0).epsilon(1e-12));
  CHECK(osc.value == doctest::Approx(-0.005248).epsilon(1e-3));
  CHECK(osc.converged);

  QuadratureSettings tight;
  tight.abs_tol = 1e-12;
  const auto sq = adaptive_integrate([](double u) { return u * u; }, Interval{0, 1}, std::nullopt, tight);
  CHECK(sq.value == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
  CHECK(sq.converged);
  CHECK(sq.error_estimate <= std::max(tight.abs_tol, tight.rel_tol * std::abs(sq.value)));
}

TEST_CASE("rectangle with separable oscillatory integrand") {
  QuadratureSettings s;
  s.rel_tol = 1e-12;
  const auto r = adaptive_integrate([](double x, double y) { return std::cos(3.0 * x) * std::sin(40.0 * y) * y; },
                                    Rectangle{{0, 2}, {0, 1}}, {3.0, 40.0}, s);
  const double expect = std::sin(6.0) / 3.0 * trig_moment(TrigMoment::LinearSin, 40.0);
  CHECK(r.value == doctest::Approx(expect).epsilon(1e-11));
  CHECK(r.converged);
}

TEST_CASE("initial panels resolve the oscillation scale") {
  QuadratureSettings s;
  s.min_panels_per_oscillation = 4;
  // Constant integrand: no refinement, so the panel count is the initial one.
  const auto r = adaptive_integrate([](double) { return 2.0; }, Interval{0, 10}, 3.0, s);
  const double max_width = 2.0 * pi / (4.0 * 3.0);
  CHECK(r.panels_used == static_cast<std::size_t>(std::ceil(10.0 / max_width)));
  CHECK(r.evaluations == 21 * r.panels_used);
  CHECK(r.value == doctest::Approx(20.0));
}

TEST_CASE("non-finite integrand and budget exhaustion") {
  QuadratureSettings s;
  try {
    adaptive_integrate([](double x) { return x > 0.5 ? std::numeric_limits<double>::quiet_NaN() : 1.0; },
                       Interval{0, 1}, std::nullopt, s);
    FAIL("expected NonFiniteIntegrand");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NonFiniteIntegrand);
  }

  QuadratureSettings small;
  small.max_subdivisions = 3;
  small.rel_tol = 1e-14;
  const auto r = adaptive_integrate([](double x) { return 1.0 / std::sqrt(x); }, Interval{0, 1}, std::nullopt, small);
  CHECK_FALSE(r.converged);
  CHECK(r.panels_used == 3);
  CHECK(r.error_estimate > 0.0);

  CHECK_THROWS_AS(adaptive_integrate([](double) { return 1.0; }, Interval{1, 0}, std::nullopt, s), Error);
  const auto empty = adaptive_integrate([](double) { return 1.0; }, Interval{1, 1}, std::nullopt, s);
  CHECK(empty.value == 0.0);
  CHECK(empty.converged);
}

TEST_CASE("deterministic and monotone in the tolerance") {
  auto f = [](double x) { return std::exp(x) * std::cos(30.0 * x) + 1.0 / (1.0 + 25.0 * x * x); };
  const double exact = oracle::integrate(f, -1.0, 1.0, 200, 30);
  QuadratureSettings s;
  const auto a = adaptive_integrate(f, Interval{-1, 1}, std::nullopt, s);
  const auto b = adaptive_integrate(f, Interval{-1, 1}, std::nullopt, s);
  CHECK(a.value == b.value);
  CHECK(a.error_estimate == b.error_estimate);

  for (auto kernel : {+[](double x) { return std::exp(x); }, +[](double x) { return std::cos(30.0 * x); },
                      +[](double x) { return 1.0 / (1.0 + 25.0 * x * x); }}) {
    const double truth = oracle::integrate(kernel, -1.0, 1.0, 200, 30);
    double previous = std::numeric_limits<double>::infinity();
    QuadratureSettings t;
    t.abs_tol = 1e-300;
    for (t.rel_tol = 1e-3; t.rel_tol > 1e-13; t.rel_tol /= 2.0) {
      const double err = std::abs(adaptive_integrate(kernel, Interval{-1, 1}, std::nullopt, t).value - truth);
      CHECK(err <= previous + 1e-15);
      previous = err;
    }
  }
  CHECK(a.value == doctest::Approx(exact).epsilon(1e-10));
}

TEST_CASE("trig moment examples") {
  CHECK(trig_moment(TrigMoment::SquareCos, 0.0) == 1.0 / 3.0);
  CHECK(trig_moment(TrigMoment::LinearSin, 0.0) == 0.0);
  CHECK(trig_moment(TrigMoment::SquareCos, pi) == doctest::Approx(-2.0 / (pi * pi)).epsilon(1e-14));
  CHECK(trig_moment(TrigMoment::LinearSin, pi) == doctest::Approx(1.0 / pi).epsilon(1e-14));
  CHECK_THROWS_AS(trig_moment(TrigMoment::SquareCos, -1.0), Error);
}

TEST_CASE("trig moments agree with quadrature of their kernels") {
  QuadratureSettings s;
  s.rel_tol = 1e-14;
  s.abs_tol = 1e-15;
  for (double a : {0.01, 1.0, 10.0, 100.0, 1000.0}) {
    const auto m2 = adaptive_integrate([a](double u) { return u * u * std::cos(a * u); }, Interval{0, 1}, a, s);
    const auto m1 = adaptive_integrate([a](double u) { return u * std::sin(a * u); }, Interval{0, 1}, a, s);
    CHECK(std::abs(trig_moment(TrigMoment::SquareCos, a) - m2.value) < 1e-12);
    CHECK(std::abs(trig_moment(TrigMoment::LinearSin, a) - m1.value) < 1e-12);

    const double o2 = oracle::integrate([a](double u) { return u * u * std::cos(a * u); }, 0.0, 1.0, 400);
    const double o1 = oracle::integrate([a](double u) { return u * std::sin(a * u); }, 0.0, 1.0, 400);
    CHECK(std::abs(trig_moment(TrigMoment::SquareCos, a) - o2) < 1e-12);
    CHECK(std::abs(trig_moment(TrigMoment::LinearSin, a) - o1) < 1e-12);
  }
}

TEST_CASE("trig moments are continuous across the series threshold") {
  const double t = kTrigMomentTaylorThreshold;
  for (auto which : {TrigMoment::SquareCos, TrigMoment::LinearSin}) {
    const double below = trig_moment(which, std::nextafter(t, 0.0));
    const double above = trig_moment(which, t);
    CHECK(std::abs(below - above) < 1e-15);
  }
  for (double a : {1e-8, 1e-4, 0.3, 0.999}) {
    const double o2 = oracle::integrate([a](double u) { return u * u * std::cos(a * u); }, 0.0, 1.0, 4);
    CHECK(std::abs(trig_moment(TrigMoment::SquareCos, a) - o2) < 1e-15);
  }
}

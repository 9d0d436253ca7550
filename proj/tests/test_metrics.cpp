#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "pflow/numerics.hpp"
#include "pflow/warped_metric.hpp"

using namespace pflow;
using metrics::WarpedMetric;
using metrics::build_warped;

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST_SUITE_BEGIN("metrics");

TEST_CASE("quadrature reproduces closed-form integrals") {
  CHECK(num::integrate([](double x) { return x * x; }, 0, 1) == doctest::Approx(1.0 / 3).epsilon(1e-13));
  CHECK(num::integrate([](double x) { return std::sin(x); }, 0, kPi) == doctest::Approx(2.0).epsilon(1e-13));
  // integrable steep integrand
  CHECK(num::integrate([](double x) { return 1.0 / std::sqrt(x); }, 1e-12, 1) ==
        doctest::Approx(2.0).epsilon(1e-5));
}

TEST_CASE("brent finds roots") {
  const double r = num::find_root([](double x) { return x * x - 2; }, 0, 2);
  CHECK(r == doctest::Approx(std::sqrt(2.0)).epsilon(1e-14));
}

TEST_CASE("build_warped closed forms") {
  const auto eu = build_warped("euclidean", {4.0});
  CHECK(eu.warp(2.0) == doctest::Approx(2.0));

  // f(1) = sinh(1)
  const auto hyp = build_warped("space_form", {1.0, 4.0});
  CHECK(hyp.warp(1.0) == doctest::Approx(1.1752011936438014).epsilon(1e-14));

  // isotropic chart: f(s) = s (1 + m/2s)^2
  const auto schw = build_warped("schwarzschild", {1.0, 16.0});
  CHECK(schw.warp(2.0) == doctest::Approx(3.125).epsilon(1e-14));

  CHECK_THROWS_AS(build_warped("space_form", {-1.0, 4.0}), std::invalid_argument);
  CHECK_THROWS_AS(build_warped("schwarzschild", {0.0, 4.0}), std::invalid_argument);
  CHECK_THROWS_AS(build_warped("nope", {1.0}), std::invalid_argument);
}

TEST_CASE("sampled warps reject bad data") {
  // direct jump discontinuity
  std::vector<double> bad{0.0, 0.1, 0.2, 0.9, 1.0};
  CHECK_THROWS_AS(WarpedMetric::from_samples(bad, 0.1, 2.0), std::invalid_argument);
  // non-positive interior sample
  std::vector<double> neg{0.0, 0.1, -0.05, 0.2, 0.3};
  CHECK_THROWS_AS(WarpedMetric::from_samples(neg, 0.1, 2.0), std::invalid_argument);

  std::vector<double> good;
  for (int i = 0; i <= 100; ++i) good.push_back(0.01 * i);
  const auto m = WarpedMetric::from_samples(good, 0.01, 1.5);
  CHECK(m.warp(0.5) == doctest::Approx(0.5));
}

TEST_CASE("sphere_area matches 4 pi f^2") {
  const auto eu = WarpedMetric::euclidean(4.0);
  CHECK(eu.sphere_area(1.0) == doctest::Approx(4 * kPi).epsilon(1e-14));

  const auto hyp = WarpedMetric::space_form(1.0, 4.0);
  CHECK(hyp.sphere_area(1.0) == doctest::Approx(17.355387381771433).epsilon(1e-13));

  const auto schw = WarpedMetric::schwarzschild(1.0, 16.0);
  CHECK(schw.sphere_area(2.0) == doctest::Approx(122.7184630308513).epsilon(1e-13));

  CHECK_THROWS_AS(eu.sphere_area(5.0), std::invalid_argument);
}

TEST_CASE("ball_volume closed forms") {
  const auto eu = WarpedMetric::euclidean(4.0);
  CHECK(eu.ball_volume(1.0) == doctest::Approx(4 * kPi / 3).epsilon(1e-11));
  CHECK(eu.ball_volume(2.0) == doctest::Approx(32 * kPi / 3).epsilon(1e-11));

  // 4 pi int_0^1 sinh^2 = pi (sinh 2 - 2)
  const auto hyp = WarpedMetric::space_form(1.0, 4.0);
  CHECK(hyp.ball_volume(1.0) == doctest::Approx(5.110932705708289).epsilon(1e-11));
}

TEST_CASE("ball_volume strictly increasing") {
  const auto hyp = WarpedMetric::space_form(0.7, 4.0);
  double prev = 0.0;
  for (double s = 0.25; s <= 4.0; s += 0.25) {
    const double v = hyp.ball_volume(s);
    CHECK(v > prev);
    prev = v;
  }
}

TEST_CASE("sphere_area(s)/s^2 -> 4 pi at a smooth pole") {
  for (const auto& m :
       {WarpedMetric::euclidean(2.0), WarpedMetric::space_form(1.0, 2.0),
        WarpedMetric::sphere_patch(1.0, 2.0)}) {
    CHECK(m.sphere_area(1e-5) / 1e-10 == doctest::Approx(4 * kPi).epsilon(1e-6));
  }
}

TEST_CASE("scalar curvature of model warps") {
  const auto eu = WarpedMetric::euclidean(4.0);
  CHECK(eu.scalar_curvature(1.7).value == doctest::Approx(0.0).epsilon(1e-12));

  const auto sph = WarpedMetric::sphere_patch(1.0, 3.0);
  CHECK(sph.scalar_curvature(0.7).value == doctest::Approx(6.0).epsilon(1e-12));

  const auto hyp = WarpedMetric::space_form(1.0, 4.0);
  CHECK(hyp.scalar_curvature(0.9).value == doctest::Approx(-6.0).epsilon(1e-12));

  // schwarzschild is scalar flat
  const auto schw = WarpedMetric::schwarzschild(1.0, 16.0);
  for (double s : {0.7, 1.3, 4.0, 11.0})
    CHECK(schw.scalar_curvature(s).value == doctest::Approx(0.0).epsilon(1e-12));

  CHECK_THROWS_AS(eu.scalar_curvature(0.0), std::invalid_argument);
}

TEST_CASE("scalar curvature families scale with a") {
  for (double a : {0.5, 2.0}) {
    const auto sph = WarpedMetric::sphere_patch(a, 1.0);
    const auto hyp = WarpedMetric::space_form(a, 2.0);
    CHECK(sph.scalar_curvature(0.5).value == doctest::Approx(6 * a).epsilon(1e-11));
    CHECK(hyp.scalar_curvature(0.5).value == doctest::Approx(-6 * a).epsilon(1e-11));
  }
}

TEST_CASE("finite-difference curvature on sampled sin warp") {
  std::vector<double> vals;
  const double h = 1e-3;
  for (int i = 0; i <= 2000; ++i) vals.push_back(std::sin(h * i));
  const auto m = WarpedMetric::from_samples(vals, h, 1.5);
  const auto r = m.scalar_curvature(0.7);
  CHECK_FALSE(r.defect);
  CHECK(r.value == doctest::Approx(6.0).epsilon(1e-4));
}

TEST_CASE("sampled kink produces a defect flag, not a value") {
  std::vector<double> vals;
  const double h = 1e-3;
  for (int i = 0; i <= 2000; ++i) {
    const double s = h * i;
    vals.push_back(s * (1 + 0.05 * std::abs(s - 1.0)));
  }
  const auto m = WarpedMetric::from_samples(vals, h, 1.5);
  CHECK(m.scalar_curvature(1.0).defect);
  CHECK_FALSE(m.scalar_curvature(0.5).defect);
}

TEST_CASE("schwarzschild lapse enters volume and arclength") {
  const auto schw = WarpedMetric::schwarzschild(1.0, 8.0);
  // volume element 4 pi s^2 (1+m/2s)^6 in the isotropic chart
  const double direct = num::integrate(
      [](double t) {
        const double u = 1 + 1.0 / (2 * t);
        return 4 * kPi * t * t * std::pow(u, 6);
      },
      0.5, 2.0, 1e-13);
  CHECK(schw.ball_volume(2.0) == doctest::Approx(direct).epsilon(1e-10));
  CHECK(schw.arclength(2.0) ==
        doctest::Approx(num::integrate(
                            [](double t) {
                              const double u = 1 + 1.0 / (2 * t);
                              return u * u;
                            },
                            0.5, 2.0, 1e-13))
            .epsilon(1e-10));
}

TEST_SUITE_END();

#include <cmath>
#include <numbers>

#include <utility>

#include "doctest.h"
#include "pflow/numerics.hpp"
#include "pflow/potential.hpp"

using namespace pflow;
using namespace pflow::pharmonic;
using metrics::WarpedMetric;

namespace {
constexpr double kPi = std::numbers::pi;

// Closed-form flat Green function for p = 1.5: G(s) = s^-3 - R^-3.
double flat_green_p32(double s, double R) {
  return std::pow(s, -3.0) - std::pow(R, -3.0);
}
}  // namespace

TEST_SUITE_BEGIN("pharmonic");

TEST_CASE("flat radial green matches the closed form") {
  const auto eu = WarpedMetric::euclidean(12.0);
  const RadialPotential g(eu, 1.5, 10.0);
  CHECK(g.green(1.0) == doctest::Approx(0.999).epsilon(1e-8));
  for (double s : {0.05, 0.3, 2.0, 7.0})
    CHECK(g.green(s) == doctest::Approx(flat_green_p32(s, 10.0)).epsilon(1e-8));
}

TEST_CASE("boundary value vanishes") {
  const auto eu = WarpedMetric::euclidean(12.0);
  const RadialPotential g(eu, 1.5, 10.0);
  CHECK(g.green(10.0) == 0.0);
}

TEST_CASE("pole normalization: G s^q -> 1 on the finest samples") {
  // every smooth-pole metric; q = (3-p)/(p-1)
  for (double p : {1.5, 1.9, 2.5}) {
    const double q = (3 - p) / (p - 1);
    const std::pair<WarpedMetric, double> cases[] = {
        {WarpedMetric::euclidean(12.0), 10.0},
        {WarpedMetric::space_form(1.0, 12.0), 10.0},
        {WarpedMetric::sphere_patch(1.0, 1.5), 1.3}};
    for (const auto& [m, R] : cases) {
      const RadialPotential g(m, p, R);
      double prev_dev = 1e9;
      for (double s : {1e-2, 1e-3, 1e-4}) {
        const double dev = std::abs(g.green(s) * std::pow(s, q) - 1.0);
        CHECK(dev < prev_dev + 1e-12);  // approaching the limit
        prev_dev = dev;
      }
      CHECK(prev_dev < 1e-5);
    }
  }
}

TEST_CASE("asygreen example: G(0.01) s^3 = 1 - (s/R)^3 at p=1.5") {
  const auto eu = WarpedMetric::euclidean(12.0);
  const RadialPotential g(eu, 1.5, 10.0);
  CHECK(g.green(0.01) * 1e-6 == doctest::Approx(1.0 - 1e-9).epsilon(1e-8));
}

TEST_CASE("w is strictly increasing and stable down to p-1 = 2^-30") {
  const auto eu = WarpedMetric::euclidean(12.0);
  const RadialPotential g(eu, 1.0 + std::pow(2.0, -30), 10.0);
  // w = 2 log s to ~2^-30 accuracy
  for (double s : {0.1, 0.5, 1.0, 3.0})
    CHECK(g.w(s) == doctest::Approx(2 * std::log(s)).epsilon(1e-7));
  CHECK(g.w(0.2) < g.w(0.3));
  // gradient: |w'| = 2/s in the limit
  CHECK(g.grad_w(0.5) == doctest::Approx(4.0).epsilon(1e-6));
}

TEST_CASE("closed-form w_p for flat metrics at moderate p") {
  const auto eu = WarpedMetric::euclidean(12.0);
  for (double p : {1.5, 1.125}) {
    const RadialPotential g(eu, p, 10.0);
    const double q = (3 - p) / (p - 1);
    for (double s : {0.1, 1.0, 4.0}) {
      const double w_exact = -(p - 1) * std::log(std::pow(s, -q) - std::pow(10.0, -q));
      CHECK(std::abs(g.w(s) - w_exact) < 1e-8);
    }
  }
}

TEST_CASE("gradient product |grad w| * s -> 3-p near the pole") {
  const auto eu = WarpedMetric::euclidean(12.0);
  const RadialPotential g(eu, 1.5, 10.0);
  for (double s : {0.01, 0.1, 0.5, 1.0})
    CHECK(g.grad_w(s) * s ==
          doctest::Approx(1.5 / (1.0 - std::pow(s / 10.0, 3.0))).epsilon(1e-9));
}

TEST_CASE("w_inverse inverts w") {
  const auto hyp = WarpedMetric::space_form(1.0, 12.0);
  const RadialPotential g(hyp, 1.25, 8.0);
  for (double t : {-4.0, -1.0, 0.5}) {
    const double s = g.w_inverse(t);
    CHECK(g.w(s) == doctest::Approx(t).epsilon(1e-10));
  }
  CHECK_THROWS(g.w_inverse(1e9));
}

TEST_CASE("radial capacity: flat example and the capacity law") {
  const auto eu = WarpedMetric::euclidean(12.0);
  const auto rep = radial_capacity(eu, 1.0, 10.0, 1.5);
  // Cap = sqrt(3) 4 pi / sqrt(0.999)
  CHECK(rep.capacity ==
        doctest::Approx(std::sqrt(3.0) * 4 * kPi / std::sqrt(0.999)).epsilon(1e-8));
  CHECK(rep.residual < 1e-8);
}

TEST_CASE("capacity monotone under set inclusion") {
  const auto hyp = WarpedMetric::space_form(0.5, 12.0);
  const auto small = radial_capacity(hyp, 0.5, 8.0, 1.5);
  const auto big = radial_capacity(hyp, 1.5, 8.0, 1.5);
  CHECK(small.capacity < big.capacity);
}

TEST_CASE("capacity law for sublevel sets: Cap e^-t constant within 1%") {
  for (const auto& m : {WarpedMetric::euclidean(12.0), WarpedMetric::schwarzschild(1.0, 40.0)}) {
    const double p = 1.5;
    const double c_norm = 4 * kPi * std::pow((3 - p) / (p - 1), p - 1);
    const RadialPotential field(m, p, std::min(10.0, 0.9 * m.s_max()));
    const double t_lo = field.w(field.s_min() + 0.2);
    for (double t : {t_lo + 1.0, t_lo + 2.0, t_lo + 3.0}) {
      const auto rep = radial_sublevel_capacity(field, t);
      CHECK(rep.capacity * std::exp(-t) / c_norm == doctest::Approx(1.0).epsilon(0.01));
    }
  }
}

TEST_CASE("capacity scaling: lambda^2 metric rescales Cap by lambda^{3-p}") {
  // flat metric scaled by lambda^2 == balls of scaled radius in unit metric
  const double lambda = 1.7, p = 1.5;
  const auto eu = WarpedMetric::euclidean(40.0);
  const auto base = radial_capacity(eu, 1.0, 10.0, p);
  const auto scaled = radial_capacity(eu, lambda, 10.0 * lambda, p);
  CHECK(scaled.capacity ==
        doctest::Approx(std::pow(lambda, 3 - p) * base.capacity).epsilon(1e-8));
}

TEST_CASE("equality case of the space-form lower bound") {
  // radial green on space_form(a) equals int_r^R v_a^{-1/(p-1)} with
  // c_{3,p} = ((3-p)/(p-1))^{1-p}
  const double a = 1.0, p = 1.7;
  const auto hyp = WarpedMetric::space_form(a, 12.0);
  const RadialPotential g(hyp, p, 8.0);
  const double c3p = std::pow((3 - p) / (p - 1), 1 - p);
  for (double r : {0.5, 1.5, 4.0}) {
    const double rhs = num::integrate(
        [&](double t) {
          const double va = c3p * std::pow(std::sinh(std::sqrt(a) * t) / std::sqrt(a), 2.0);
          return std::pow(va, -1.0 / (p - 1));
        },
        r, 8.0, 1e-12);
    CHECK(g.green(r) == doctest::Approx(rhs).epsilon(1e-8));
  }
}

TEST_CASE("imcf_limit: euclidean continuation approaches 2 log s") {
  const auto eu = WarpedMetric::euclidean(12.0);
  SolverConfig cfg;
  cfg.p_schedule = SolverConfig::dyadic_schedule(1, 14);
  cfg.annulus_lo = 0.1;
  cfg.annulus_hi = 1.0;
  cfg.cauchy_tol = 5e-4;
  const auto lim = imcf_limit(eu, 10.0, cfg);
  CHECK(lim.converged);
  CHECK(lim.cauchy_gap < 5e-4);
  double sup = 0.0;
  for (double s = 0.1; s <= 1.0; s += 0.02)
    sup = std::max(sup, std::abs(lim.field->w(s) - 2 * std::log(s)));
  CHECK(sup < 1e-3);
}

TEST_CASE("imcf_limit: schedule exhaustion is flagged, not hidden") {
  const auto eu = WarpedMetric::euclidean(12.0);
  SolverConfig cfg;
  cfg.p_schedule = SolverConfig::dyadic_schedule(1, 3);
  cfg.annulus_lo = 0.1;
  cfg.annulus_hi = 1.0;
  cfg.cauchy_tol = 1e-9;
  const auto lim = imcf_limit(eu, 10.0, cfg);
  CHECK_FALSE(lim.converged);
  CHECK(lim.cauchy_gap > 1e-9);
  CHECK(lim.field != nullptr);  // last iterate still returned
}

TEST_CASE("imcf_limit on radial metrics: w = log(A/4pi) + o(1)") {
  // so that P(E_t) = 4 pi e^t
  SolverConfig cfg;
  cfg.p_schedule = SolverConfig::dyadic_schedule(4, 22);
  cfg.cauchy_tol = 1e-6;
  for (const auto& m : {WarpedMetric::space_form(1.0, 12.0), WarpedMetric::schwarzschild(1.0, 40.0)}) {
    cfg.annulus_lo = m.s_min() + 0.3;
    cfg.annulus_hi = m.s_min() + 3.0;
    const auto lim = imcf_limit(m, std::min(10.0, 0.9 * m.s_max()), cfg);
    CHECK(lim.converged);
    for (double s = cfg.annulus_lo; s < cfg.annulus_hi; s += 0.3) {
      const double oracle = std::log(m.sphere_area(s) / (4 * kPi));
      CHECK(lim.field->w(s) == doctest::Approx(oracle).epsilon(2e-5));
    }
  }
}

TEST_CASE("schwarzschild potential is strictly increasing in s") {
  const auto schw = WarpedMetric::schwarzschild(1.0, 40.0);
  const RadialPotential g(schw, 1.2, 30.0);
  double prev = -1e300;
  for (double s = 0.6; s <= 25.0; s += 0.5) {
    const double v = g.w(s);
    CHECK(v > prev);
    prev = v;
  }
}

TEST_CASE("solver config validation") {
  SolverConfig cfg;
  cfg.p_schedule = {1.5, 1.7};  // increasing: invalid
  CHECK_THROWS(cfg.validate(10.0));
  cfg.p_schedule = {3.5};
  CHECK_THROWS(cfg.validate(10.0));
  cfg.p_schedule = {1.5, 1.25};
  cfg.eps_inner = 2.0;  // >= R/10
  CHECK_THROWS(cfg.validate(10.0));
}

TEST_SUITE_END();

#include <cmath>
#include <stdexcept>

#include "doctest.h"
#include "pflow/grid_metric.hpp"
#include "pflow/mollify.hpp"

using namespace pflow;
using namespace pflow::metrics;

TEST_SUITE_BEGIN("metrics");

TEST_CASE("grid metric rejects non-SPD samples") {
  const auto lat = Lattice::centered_cube(1.0, 5);
  std::vector<SymMat3> field(lat.nodes(), SymMat3::identity());
  field[3].a = {1, 1, -2, 0, 0, 0};
  CHECK_THROWS_AS(GridMetric::from_field(lat, field), std::invalid_argument);
}

TEST_CASE("ellipticity bounds of a pinched metric") {
  const auto lat = Lattice::centered_cube(1.0, 9);
  const auto g = GridMetric::conformal(
      lat, [](const Vec3& x) { return 1.0 + 0.25 * x.x * x.x; });
  CHECK(g.lambda_min() == doctest::Approx(1.0));
  CHECK(g.lambda_max() == doctest::Approx(1.0625));
}

TEST_CASE("grid scalar curvature on model metrics") {
  const auto lat = Lattice::centered_cube(1.0, 33);

  SUBCASE("flat is zero") {
    const auto curv = scalar_curvature_field(GridMetric::flat(lat));
    for (double r : curv)
      if (!std::isnan(r)) CHECK(std::abs(r) < 1e-10);
  }

  SUBCASE("hyperbolic ball model has R = -6") {
    // g = (2/(1-|x|^2))^2 delta on the unit ball
    const auto g = GridMetric::conformal(lat, [](const Vec3& x) {
      const double r2 = x.dot(x);
      const double c = 2.0 / (1.0 - r2);
      return c * c;
    });
    const auto curv = scalar_curvature_field(g);
    const auto idx = lat.index(16, 16, 16);
    CHECK(curv[idx] == doctest::Approx(-6.0).epsilon(1e-2));
    CHECK(curv[lat.index(20, 14, 17)] == doctest::Approx(-6.0).epsilon(1e-2));
  }

  SUBCASE("stereographic round sphere has R = +6") {
    const auto g = GridMetric::conformal(lat, [](const Vec3& x) {
      const double c = 2.0 / (1.0 + x.dot(x));
      return c * c;
    });
    const auto curv = scalar_curvature_field(g);
    CHECK(curv[lat.index(16, 16, 16)] == doctest::Approx(6.0).epsilon(1e-2));
  }
}

TEST_CASE("isotropic schwarzschild grid is scalar flat") {
  Lattice lat = Lattice::centered_cube(2.0, 33);
  lat.origin = {2.0, 2.0, 2.0};  // keep the puncture far outside the box
  const auto g = GridMetric::schwarzschild_isotropic(lat, 1.0, {0, 0, 0});
  const auto curv = scalar_curvature_field(g);
  double worst = 0;
  for (double r : curv)
    if (!std::isnan(r)) worst = std::max(worst, std::abs(r));
  CHECK(worst < 5e-4);
}

TEST_CASE("binary round trip") {
  const auto lat = Lattice::centered_cube(0.5, 4);
  const auto g = GridMetric::conformal(
      lat, [](const Vec3& x) { return 1.0 + 0.1 * (x.x + 0.3) * (x.x + 0.3); });
  g.save_binary("grid_roundtrip.bin");
  const auto h = GridMetric::load_binary(lat, "grid_roundtrip.bin");
  for (std::size_t i = 0; i < lat.nodes(); ++i)
    for (int c = 0; c < 6; ++c) CHECK(g.at(i).a[c] == h.at(i).a[c]);
}

TEST_CASE("mollifying a flat grid changes nothing") {
  const auto lat = Lattice::centered_cube(1.0, 17);
  const auto g = GridMetric::flat(lat);
  const auto sm = mollify(g, 3 * lat.h, GridRegion{6, 10, 6, 10, 6, 10});
  CHECK(sm.eps_defect == 0.0);
  for (std::size_t i = 0; i < lat.nodes(); ++i)
    CHECK(sm.smoothed.at(i).a[0] == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("mollified warped metric: smooth input keeps a small defect") {
  const auto hyp = WarpedMetric::space_form(1.0, 3.0);
  const auto sm = mollify(hyp, 0.05, 0.3, 2.5);
  // R = -6 for the base; the mollified warp stays close, so defect ~ 6
  CHECK(sm.eps_defect == doctest::Approx(6.0).epsilon(0.02));

  const auto eu = mollify(WarpedMetric::euclidean(3.0), 0.1, 0.3, 2.5);
  CHECK(eu.eps_defect <= 1e-9);
}

TEST_CASE("mollify: defect of the convex-kink warp grows as sigma shrinks") {
  WarpedMetric::CustomSpec spec;
  spec.f = [](double s) { return s * (1 + 0.05 * std::abs(s - 1.0)); };
  spec.s_min = 0.0;
  spec.s_max = 3.0;
  spec.smooth_pole = true;
  spec.kinks = {1.0};
  const auto base = WarpedMetric::custom(spec);

  double prev = -1;
  for (double sigma : {0.2, 0.1, 0.05}) {
    const auto sm = mollify(base, sigma, 0.3, 2.0);
    CHECK(sm.eps_defect > 0);
    CHECK(std::isfinite(sm.eps_defect));
    if (prev >= 0) CHECK(sm.eps_defect >= prev);  // non-increasing in sigma
    prev = sm.eps_defect;
  }
}

TEST_CASE("mollify rejects regions without a sigma collar") {
  const auto eu = WarpedMetric::euclidean(2.0);
  CHECK_THROWS_AS(mollify(eu, 0.5, 0.5, 1.8), std::invalid_argument);
  const auto lat = Lattice::centered_cube(1.0, 17);
  CHECK_THROWS_AS(mollify(GridMetric::flat(lat), 3 * lat.h, GridRegion{0, 16, 0, 16, 0, 16}),
                  std::invalid_argument);
}

TEST_SUITE_END();

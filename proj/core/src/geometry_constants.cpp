#include "pflow/geometry_constants.hpp"
#include <cstdint>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <queue>
#include <stdexcept>

#include "pflow/numerics.hpp"

namespace pflow::metrics {

namespace {
constexpr double kPi = std::numbers::pi;
}

namespace {

// One fast-sweeping eikonal solve (T_s/lapse)^2 + (T_phi/f)^2 = 1 on the
// meridian rectangle. First order upwind; the caller extrapolates.
std::vector<double> sweep_eikonal(const WarpedMetric& m, double s_center,
                                  double s_lo, double ds, int ns, double dphi,
                                  int nphi) {
  const double inf = std::numeric_limits<double>::infinity();
  std::vector<double> T(static_cast<std::size_t>(ns) * nphi, inf);
  std::vector<double> ws(ns), wphi(ns);
  for (int a = 0; a < ns; ++a) {
    const double s = std::clamp(s_lo + a * ds, m.s_min(), m.s_max());
    ws[a] = m.lapse(s) * ds;
    // tiny positive angular weight at the pole column identifies it
    wphi[a] = std::max(m.warp(s), 1e-9) * dphi;
  }

  // Near-source initialization over a fixed physical radius with the
  // developed chord sqrt(dl^2 + 4 f f0 sin^2(phi/2)); exact in flat space,
  // O(d^3 K) otherwise. A fixed physical extent keeps the two Richardson
  // resolutions consistent.
  const double r_init = 0.12 * (ds * (ns - 1));
  const double f0 = m.warp(std::clamp(s_center, m.s_min(), m.s_max()));
  const double b0 = m.lapse(s_center);
  for (int a = 0; a < ns; ++a) {
    const double s = std::clamp(s_lo + a * ds, m.s_min(), m.s_max());
    const double f = m.warp(s);
    const double dl = 0.5 * (m.lapse(s) + b0) * (s - s_center);
    for (int b = 0; b < nphi; ++b) {
      const double sh = std::sin(0.5 * b * dphi);
      const double chord = std::sqrt(dl * dl + 4 * f * f0 * sh * sh);
      if (chord <= r_init) T[static_cast<std::size_t>(a) * nphi + b] = chord;
    }
  }

  auto at = [&](int a, int b) -> double& {
    return T[static_cast<std::size_t>(a) * nphi + b];
  };
  auto update = [&](int a, int b) {
    const double ta = std::min(a > 0 ? at(a - 1, b) : inf, a < ns - 1 ? at(a + 1, b) : inf);
    const double tb = std::min(b > 0 ? at(a, b - 1) : inf, b < nphi - 1 ? at(a, b + 1) : inf);
    double cand = inf;
    if (std::isfinite(ta) && std::isfinite(tb)) {
      const double A = 1.0 / (ws[a] * ws[a]);
      const double B = 1.0 / (wphi[a] * wphi[a]);
      const double sum = A + B;
      const double mid = A * ta + B * tb;
      const double disc = mid * mid - sum * (A * ta * ta + B * tb * tb - 1.0);
      if (disc >= 0) {
        const double t = (mid + std::sqrt(disc)) / sum;
        if (t >= ta && t >= tb) cand = t;
      }
    }
    cand = std::min({cand, ta + ws[a], tb + wphi[a]});
    double& cur = at(a, b);
    if (cand < cur) cur = cand;
  };

  for (int pass = 0; pass < 10; ++pass) {
    double before = 0;
    for (double v : T)
      if (std::isfinite(v)) before += v;
    for (int a = 0; a < ns; ++a)
      for (int b = 0; b < nphi; ++b) update(a, b);
    for (int a = ns - 1; a >= 0; --a)
      for (int b = 0; b < nphi; ++b) update(a, b);
    for (int a = 0; a < ns; ++a)
      for (int b = nphi - 1; b >= 0; --b) update(a, b);
    for (int a = ns - 1; a >= 0; --a)
      for (int b = nphi - 1; b >= 0; --b) update(a, b);
    double after = 0;
    for (double v : T)
      if (std::isfinite(v)) after += v;
    if (pass > 0 && std::abs(before - after) < 1e-12 * (std::abs(after) + 1)) break;
  }
  return T;
}

}  // namespace

MeridianDistance::MeridianDistance(const WarpedMetric& m, double s_center,
                                   double s_lo, double s_hi, int ns, int nphi,
                                   bool richardson)
    : s_lo_(s_lo), s_hi_(s_hi), ns_(ns), nphi_(nphi) {
  ds_ = (s_hi - s_lo) / (ns - 1);
  dphi_ = kPi / (nphi - 1);
  dist_ = sweep_eikonal(m, s_center, s_lo, ds_, ns, dphi_, nphi);
  if (richardson) {
    // Pointwise first-order Richardson against one refinement.
    const int ns2 = 2 * ns - 1, nphi2 = 2 * nphi - 1;
    const auto fine = sweep_eikonal(m, s_center, s_lo, ds_ / 2, ns2, dphi_ / 2, nphi2);
    for (int a = 0; a < ns; ++a)
      for (int b = 0; b < nphi; ++b) {
        const double coarse = dist_[static_cast<std::size_t>(a) * nphi + b];
        const double fv = fine[static_cast<std::size_t>(2 * a) * nphi2 + 2 * b];
        if (std::isfinite(coarse) && std::isfinite(fv))
          dist_[static_cast<std::size_t>(a) * nphi + b] = 2 * fv - coarse;
      }
  }
}

double MeridianDistance::operator()(double s, double phi) const {
  phi = std::abs(phi);
  if (phi > kPi) phi = 2 * kPi - phi;
  const double xa = std::clamp((s - s_lo_) / ds_, 0.0, double(ns_ - 1));
  const double xb = std::clamp(phi / dphi_, 0.0, double(nphi_ - 1));
  const int a = std::min(static_cast<int>(xa), ns_ - 2);
  const int b = std::min(static_cast<int>(xb), nphi_ - 2);
  const double ta = xa - a, tb = xb - b;
  auto v = [&](int i, int j) { return dist_[static_cast<std::size_t>(i) * nphi_ + j]; };
  return (1 - ta) * ((1 - tb) * v(a, b) + tb * v(a, b + 1)) +
         ta * ((1 - tb) * v(a + 1, b) + tb * v(a + 1, b + 1));
}

double MeridianDistance::ball_volume(const WarpedMetric& m, double r) const {
  double vol = 0.0;
  auto v = [&](int i, int j) { return dist_[static_cast<std::size_t>(i) * nphi_ + j]; };
  for (int a = 0; a + 1 < ns_; ++a) {
    const double s_mid = s_lo_ + (a + 0.5) * ds_;
    if (s_mid <= m.s_min()) continue;
    const double f = m.warp(s_mid);
    const double b = m.lapse(s_mid);
    for (int p = 0; p + 1 < nphi_; ++p) {
      const double d00 = v(a, p), d01 = v(a, p + 1), d10 = v(a + 1, p), d11 = v(a + 1, p + 1);
      const double dmin = std::min({d00, d01, d10, d11});
      const double dmax = std::max({d00, d01, d10, d11});
      double frac;
      if (dmax < r)
        frac = 1.0;
      else if (dmin >= r)
        frac = 0.0;
      else
        frac = (r - dmin) / (dmax - dmin);
      if (frac == 0.0) continue;
      const double phi_mid = (p + 0.5) * dphi_;
      vol += frac * 2 * kPi * f * f * b * std::sin(phi_mid) * ds_ * dphi_;
    }
  }
  return vol;
}

GeometryConstants geometry_constants(const WarpedMetric& m, double R,
                                     const GeometryConstantsConfig& cfg) {
  if (!(R > 0) || m.s_max() < 2 * R)
    throw std::invalid_argument(
        "geometry_constants: need s_max >= 2R so sampled balls fit the domain");

  GeometryConstants out;
  out.low_confidence = false;

  const std::size_t meridian_nodes =
      static_cast<std::size_t>(cfg.meridian_ns) * cfg.meridian_nphi;
  if (2 * meridian_nodes > cfg.budget_nodes) out.low_confidence = true;

  // --- Ahlfors ratio over centers {pole, R/2, 3R/4} and dyadic radii.
  double ratio_min = std::numeric_limits<double>::infinity();
  double ratio_max = 0.0;
  std::vector<double> radii;
  for (int k = 0; k < 6; ++k) radii.push_back(R * std::pow(0.5, k / 2.0));

  for (double r : radii) {
    const double v = m.ball_volume(m.s_min() + r);
    // For pole metrics this is the exact centered-ball volume.
    if (m.smooth_pole()) {
      const double ratio = v / ((4 * kPi / 3) * r * r * r);
      ratio_min = std::min(ratio_min, ratio);
      ratio_max = std::max(ratio_max, ratio);
    }
  }
  for (double s0 : {R / 2, 3 * R / 4}) {
    if (s0 <= m.s_min()) continue;
    const MeridianDistance md(m, s0, m.s_min(), std::min(m.s_max(), s0 + 1.5 * R),
                              cfg.meridian_ns, cfg.meridian_nphi, true);
    for (double r : radii) {
      const double v = md.ball_volume(m, r);
      const double ratio = v / ((4 * kPi / 3) * r * r * r);
      ratio_min = std::min(ratio_min, ratio);
      ratio_max = std::max(ratio_max, ratio);
    }
  }
  out.c_ahlfors = std::max(ratio_max, 1.0 / ratio_min);

  // --- Covering count of A_{3r/4,5r/4}(o) by r/2-balls, greedy, worst r.
  // Annulus samples: radial layers x Fibonacci sphere directions. Distances
  // between annulus points reduce to per-layer meridian fields.
  int worst_cov = 1;
  for (double r : {R / 2, R / 4, R / 8}) {
    std::vector<double> layer_s(cfg.cov_layers);
    for (int l = 0; l < cfg.cov_layers; ++l)
      layer_s[l] = m.s_min() + 0.75 * r + 0.5 * r * l / (cfg.cov_layers - 1);
    std::vector<MeridianDistance> fields;
    fields.reserve(layer_s.size());
    for (double s0 : layer_s)
      fields.emplace_back(m, s0, std::max(m.s_min(), m.s_min() + 0.25 * r),
                          std::min(m.s_max(), m.s_min() + 2.5 * r), cfg.cov_ns,
                          cfg.cov_nphi, false);

    struct Pt {
      int layer;
      Vec3 dir;
    };
    std::vector<Pt> pts;
    const double golden = kPi * (3.0 - std::sqrt(5.0));
    for (int l = 0; l < cfg.cov_layers; ++l)
      for (int i = 0; i < cfg.cov_directions; ++i) {
        const double z = 1.0 - 2.0 * (i + 0.5) / cfg.cov_directions;
        const double rho = std::sqrt(std::max(0.0, 1 - z * z));
        const double th = golden * i;
        pts.push_back({l, {rho * std::cos(th), rho * std::sin(th), z}});
      }
    // Pairwise coverage sets, then greedy max-coverage.
    const std::size_t np = pts.size();
    std::vector<std::vector<std::uint32_t>> covers(np);
    for (std::size_t c = 0; c < np; ++c) {
      const auto& field = fields[pts[c].layer];
      for (std::size_t q = 0; q < np; ++q) {
        const double cosang = std::clamp(pts[c].dir.dot(pts[q].dir), -1.0, 1.0);
        const double d = field(layer_s[pts[q].layer], std::acos(cosang));
        if (d <= r / 2) covers[c].push_back(static_cast<std::uint32_t>(q));
      }
    }
    std::vector<bool> covered(np, false);
    std::size_t remaining = np;
    int count = 0;
    while (remaining > 0) {
      std::size_t best = np;
      std::size_t best_gain = 0;
      for (std::size_t c = 0; c < np; ++c) {
        std::size_t gain = 0;
        for (auto q : covers[c])
          if (!covered[q]) ++gain;
        if (gain > best_gain) {
          best_gain = gain;
          best = c;
        }
      }
      if (best == np) break;  // isolated samples; should not happen
      ++count;
      for (auto q : covers[best])
        if (!covered[q]) {
          covered[q] = true;
          --remaining;
        }
    }
    worst_cov = std::max(worst_cov, count);
  }
  out.c_cov = worst_cov;

  // --- Sobolev/isoperimetric constant from the test-set library:
  // centered balls (exact radial quadrature) and off-center balls.
  double worst_sob = 0.0;
  for (double r : radii) {
    const double s = m.s_min() + r;
    const double v = m.ball_volume(s);
    const double p = m.sphere_area(s);
    worst_sob = std::max(worst_sob, std::pow(v, 2.0 / 3.0) / p);
  }
  {
    const double s0 = R / 2;
    if (s0 > m.s_min()) {
      const MeridianDistance md(m, s0, m.s_min(), std::min(m.s_max(), s0 + 1.5 * R),
                                cfg.meridian_ns, cfg.meridian_nphi, true);
      for (double r : {R / 2, R / 4}) {
        const double v = md.ball_volume(m, r);
        const double dp = 0.01 * r;
        const double p = (md.ball_volume(m, r + dp) - md.ball_volume(m, r - dp)) / (2 * dp);
        if (p > 0) worst_sob = std::max(worst_sob, std::pow(v, 2.0 / 3.0) / p);
      }
    }
  }
  out.c_sob = worst_sob;

  // --- Poincare constant: declared, or a radial-test-function lower
  // diagnostic (no tractable algorithm for the true (1,1) constant).
  if (cfg.declared_poincare > 0) {
    out.c_poincare = cfg.declared_poincare;
    out.poincare_declared = true;
  } else {
    double diag = 0.0;
    for (double r : {R, R / 2}) {
      for (int k = 1; k <= 2; ++k) {
        const auto ffn = [&](double s) { return std::cos(k * kPi * (s - m.s_min()) / r); };
        const double vol_r = m.ball_volume(m.s_min() + r);
        const double mean = num::integrate_split(
                                [&](double s) {
                                  return ffn(s) * 4 * kPi * m.warp(s) * m.warp(s) * m.lapse(s);
                                },
                                m.s_min(), m.s_min() + r, m.kinks(), 1e-10) /
                            vol_r;
        const double dev =
            num::integrate_split(
                [&](double s) {
                  return std::abs(ffn(s) - mean) * 4 * kPi * m.warp(s) * m.warp(s) * m.lapse(s);
                },
                m.s_min(), m.s_min() + r, m.kinks(), 1e-10) /
            vol_r;
        const double vol_2r = m.ball_volume(std::min(m.s_max(), m.s_min() + 2 * r));
        const double grad =
            num::integrate_split(
                [&](double s) {
                  const double df = k * kPi / r *
                                    std::abs(std::sin(k * kPi * (s - m.s_min()) / r)) /
                                    m.lapse(s);
                  return df * 4 * kPi * m.warp(s) * m.warp(s) * m.lapse(s);
                },
                m.s_min(), std::min(m.s_max(), m.s_min() + 2 * r), m.kinks(), 1e-10) /
            vol_2r;
        if (grad > 0) diag = std::max(diag, dev / (r * grad));
      }
    }
    out.c_poincare = diag;
    out.poincare_declared = false;
  }
  return out;
}

}  // namespace pflow::metrics

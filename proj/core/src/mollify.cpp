#include "pflow/mollify.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "pflow/numerics.hpp"

namespace pflow::metrics {

double bump_kernel(double u) {
  if (std::abs(u) >= 1) return 0.0;
  const double w = 1 - u * u;
  return (15.0 / 16.0) * w * w;
}

double bump_kernel_d1(double u) {
  if (std::abs(u) >= 1) return 0.0;
  return -(15.0 / 4.0) * u * (1 - u * u);
}

double bump_kernel_d2(double u) {
  if (std::abs(u) >= 1) return 0.0;
  return -(15.0 / 4.0) * (1 - 3 * u * u);
}

namespace {

// Odd extension through the pole keeps f(0) = 0 and f'(0) = 1 exact for the
// model warps; beyond s_max the warp is linearly continued (never reached
// when the region honors the sigma-collar).
double extended_warp(const WarpedMetric& base, double s) {
  if (s >= base.s_min()) return base.warp(std::min(s, base.s_max()));
  if (base.smooth_pole() && base.s_min() == 0.0) return -base.warp(-s);
  return base.warp(base.s_min());
}

struct ConvSpec {
  const WarpedMetric* base;
  double sigma;
};

double convolve(const ConvSpec& cs, double s, int deriv) {
  const auto& base = *cs.base;
  const double sigma = cs.sigma;
  std::vector<double> splits;
  for (double kink : base.kinks()) {
    splits.push_back((s - kink) / sigma);
    if (base.smooth_pole()) splits.push_back((s + kink) / sigma);
  }
  splits.push_back(s / sigma);  // extension seam at the pole
  const auto integrand = [&](double u) {
    const double fv = extended_warp(base, s - sigma * u);
    switch (deriv) {
      case 0: return fv * bump_kernel(u);
      case 1: return fv * bump_kernel_d1(u);
      default: return fv * bump_kernel_d2(u);
    }
  };
  const double raw = num::integrate_split(integrand, -1.0, 1.0, splits, 1e-13, 1e-300);
  if (deriv == 0) return raw;
  if (deriv == 1) return raw / sigma;
  return raw / (sigma * sigma);
}

double convolve_lapse(const ConvSpec& cs, double s, int deriv) {
  const auto& base = *cs.base;
  const double sigma = cs.sigma;
  const auto integrand = [&](double u) {
    const double t = std::clamp(s - sigma * u, base.s_min(), base.s_max());
    const double bv = base.lapse(t);
    return deriv == 0 ? bv * bump_kernel(u) : bv * bump_kernel_d1(u);
  };
  const double raw = num::integrate(integrand, -1.0, 1.0, 1e-13, 1e-300);
  return deriv == 0 ? raw : raw / sigma;
}

}  // namespace

SmoothedWarped mollify(const WarpedMetric& base, double sigma, double region_lo,
                       double region_hi) {
  if (!(sigma > 0)) throw std::invalid_argument("mollify: sigma must be positive");
  if (!(region_lo < region_hi))
    throw std::invalid_argument("mollify: empty region");
  if (region_hi > base.s_max() - sigma)
    throw std::invalid_argument("mollify: region too close to the outer boundary");
  const bool pole = base.smooth_pole() && base.s_min() == 0.0;
  if (!pole && region_lo < base.s_min() + sigma)
    throw std::invalid_argument("mollify: region too close to the inner boundary");
  if (pole && region_lo <= 0)
    throw std::invalid_argument("mollify: region must exclude the pole");

  ConvSpec cs{&base, sigma};
  const bool has_lapse = base.lapse(0.5 * (region_lo + region_hi)) != 1.0 ||
                         base.lapse(region_hi) != 1.0;

  WarpedMetric::CustomSpec spec;
  spec.f = [cs](double s) { return convolve(cs, s, 0); };
  spec.df = [cs](double s) { return convolve(cs, s, 1); };
  spec.d2f = [cs](double s) { return convolve(cs, s, 2); };
  if (has_lapse) {
    spec.lapse = [cs](double s) { return convolve_lapse(cs, s, 0); };
    spec.dlapse = [cs](double s) { return convolve_lapse(cs, s, 1); };
  }
  spec.s_min = pole ? 0.0 : base.s_min() + sigma;
  spec.s_max = base.s_max() - sigma;
  spec.smooth_pole = pole;
  spec.fd_stencil = sigma / 4;
  spec.label = "mollified(" + base.label() + ")";
  WarpedMetric smoothed = WarpedMetric::custom(std::move(spec));

  // Measured defect: coarse scan plus local refinement of the minimum of R.
  const int n_scan = 600;
  double min_r = std::numeric_limits<double>::infinity();
  double s_at = region_lo;
  for (int i = 0; i <= n_scan; ++i) {
    const double s = region_lo + (region_hi - region_lo) * i / n_scan;
    const double r = smoothed.scalar_curvature(s).value;
    if (r < min_r) {
      min_r = r;
      s_at = s;
    }
  }
  const double ds = (region_hi - region_lo) / n_scan;
  for (double step = ds / 2; step > ds / 64; step /= 2) {
    for (double s : {s_at - step, s_at + step}) {
      if (s < region_lo || s > region_hi) continue;
      const double r = smoothed.scalar_curvature(s).value;
      if (r < min_r) {
        min_r = r;
        s_at = s;
      }
    }
  }
  const double eps = std::max(0.0, -min_r);
  return {base, sigma, std::move(smoothed), region_lo, region_hi, eps};
}

SmoothedGrid mollify(const GridMetric& base, double sigma, const GridRegion& region) {
  if (!(sigma > 0)) throw std::invalid_argument("mollify: sigma must be positive");
  const Lattice& lat = base.lattice();
  const int radius = static_cast<int>(std::ceil(sigma / lat.h - 1e-12));
  const int margin = radius + 2;  // curvature stencil needs two more layers
  if (region.i0 < margin || region.j0 < margin || region.k0 < margin ||
      region.i1 >= lat.nx - margin || region.j1 >= lat.ny - margin ||
      region.k1 >= lat.nz - margin)
    throw std::invalid_argument("mollify: region too close to the lattice boundary");

  std::vector<double> w(2 * radius + 1);
  double norm = 0;
  for (int d = -radius; d <= radius; ++d) {
    w[d + radius] = bump_kernel(d * lat.h / sigma);
    norm += w[d + radius];
  }
  for (auto& v : w) v /= norm;

  auto pass = [&](const std::vector<SymMat3>& in, int axis) {
    std::vector<SymMat3> out(in.size());
    const std::size_t strides[3] = {1, static_cast<std::size_t>(lat.nx),
                                    static_cast<std::size_t>(lat.nx) * lat.ny};
    const int extents[3] = {lat.nx, lat.ny, lat.nz};
    for (int k = 0; k < lat.nz; ++k)
      for (int j = 0; j < lat.ny; ++j)
        for (int i = 0; i < lat.nx; ++i) {
          const std::size_t idx = lat.index(i, j, k);
          const int pos[3] = {i, j, k};
          SymMat3 acc;
          acc.a.fill(0);
          for (int d = -radius; d <= radius; ++d) {
            int p = pos[axis] + d;
            p = std::clamp(p, 0, extents[axis] - 1);  // replicate at edges
            const std::size_t src = idx + (p - pos[axis]) * strides[axis];
            for (int c = 0; c < 6; ++c) acc.a[c] += w[d + radius] * in[src].a[c];
          }
          out[idx] = acc;
        }
    return out;
  };

  std::vector<SymMat3> field = base.field();
  for (int axis = 0; axis < 3; ++axis) field = pass(field, axis);
  GridMetric smoothed = GridMetric::from_field(lat, std::move(field));

  const auto curv = scalar_curvature_field(smoothed);
  double min_r = std::numeric_limits<double>::infinity();
  for (int k = region.k0; k <= region.k1; ++k)
    for (int j = region.j0; j <= region.j1; ++j)
      for (int i = region.i0; i <= region.i1; ++i) {
        const double r = curv[lat.index(i, j, k)];
        if (!std::isnan(r)) min_r = std::min(min_r, r);
      }
  const double eps = std::isfinite(min_r) ? std::max(0.0, -min_r) : 0.0;
  return {base, sigma, std::move(smoothed), region, eps};
}

}  // namespace pflow::metrics

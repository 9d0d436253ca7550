#ifndef PFLOW_MOLLIFY_HPP
#define PFLOW_MOLLIFY_HPP

#include "pflow/grid_metric.hpp"
#include "pflow/warped_metric.hpp"

namespace pflow::metrics {

// C^1 bump kernel (15/16)(1 - u^2)^2 on [-1, 1], unit mass.
double bump_kernel(double u);
double bump_kernel_d1(double u);
double bump_kernel_d2(double u);

// Mollified metric together with its measured scalar-curvature defect
// eps = max(0, -inf R) over the declared region.
struct SmoothedWarped {
  WarpedMetric base;
  double sigma = 0.0;
  WarpedMetric smoothed;
  double region_lo = 0.0, region_hi = 0.0;
  double eps_defect = 0.0;
};

// Convolves the warp (odd-extended through a smooth pole) with the bump
// kernel of width sigma. Derivatives of the smoothed warp are exact
// quadratures against kernel derivatives, so curvature needs no finite
// differencing. The region must keep a sigma-collar inside the base domain.
SmoothedWarped mollify(const WarpedMetric& base, double sigma, double region_lo,
                       double region_hi);

struct GridRegion {
  int i0 = 0, i1 = 0, j0 = 0, j1 = 0, k0 = 0, k1 = 0;  // inclusive node ranges
};

struct SmoothedGrid {
  GridMetric base;
  double sigma = 0.0;
  GridMetric smoothed;
  GridRegion region;
  double eps_defect = 0.0;
};

// Separable componentwise convolution with the normalized discrete product
// kernel of width sigma.
SmoothedGrid mollify(const GridMetric& base, double sigma, const GridRegion& region);

}  // namespace pflow::metrics

#endif

#ifndef PFLOW_DEFICIT_HPP
#define PFLOW_DEFICIT_HPP

#include <vector>

#include "pflow/warped_metric.hpp"

namespace pflow::metrics {

// Pointwise scalar curvature at the pole recovered from the isoperimetric
// deficit of small centered balls,
//
//   R(o) ~ c * r^-5 * (|B_r(o)| - P(B_r(o))^{3/2} / (6 sqrt(pi))),
//
// extrapolated r -> 0 with a two-term even fit a r^5 + b r^7. The constant c
// is calibrated once against the unit round sphere patch (R = 6) and frozen
// for the process lifetime.
struct DeficitEstimate {
  double curvature = 0.0;
  double fit_residual = 0.0;  // rms relative residual of the fit
  bool converged = true;
};

DeficitEstimate deficit_scalar_estimate(const WarpedMetric& m,
                                        const std::vector<double>& r_seq);

// The calibrated constant itself (exposed for diagnostics; lazily computed).
double deficit_calibration_constant();

}  // namespace pflow::metrics

#endif

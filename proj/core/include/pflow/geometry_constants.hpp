#ifndef PFLOW_GEOMETRY_CONSTANTS_HPP
#define PFLOW_GEOMETRY_CONSTANTS_HPP

#include <cstddef>
#include <vector>

#include "pflow/geometry3.hpp"
#include "pflow/warped_metric.hpp"

namespace pflow::metrics {

// Quantitative geometry of a ball B_R(o), measured on deterministic sample
// sets. c_ahlfors is normalized against the flat ball volume, so flat space
// measures 1. harnack_ratio / zeta / eta are filled in by potential-field
// measurements (see pharmonic::bound_checks), not here.
struct GeometryConstants {
  double c_ahlfors = 1.0;  // max of ratio and 1/ratio of |B_r(x)| / ((4pi/3) r^3)
  int c_cov = 1;           // greedy covering count of A_{3r/4,5r/4} by r/2-balls
  double c_sob = 0.0;      // worst |E|^{2/3}/P(E) over the test-set library
  double c_poincare = 0.0;
  bool poincare_declared = false;  // false: diagnostic lower estimate only
  double harnack_ratio = 1.0;
  double zeta = 0.0;
  double eta = 0.0;
  bool low_confidence = false;
};

struct GeometryConstantsConfig {
  int meridian_ns = 160;
  int meridian_nphi = 320;
  int cov_ns = 90;
  int cov_nphi = 180;
  int cov_layers = 5;
  int cov_directions = 192;
  std::size_t budget_nodes = 4000000;
  double declared_poincare = 0.0;  // > 0 means declared by the user
};

// Measures C_A, C_cov, C_Sob (and the Poincare diagnostic) around the pole of
// a warped metric. Off-center balls are handled in the totally geodesic
// meridian plane, where the distance equals the ambient distance.
// Requires s_max >= 2R so that all sampled balls fit inside the domain.
GeometryConstants geometry_constants(const WarpedMetric& m, double R,
                                     const GeometryConstantsConfig& cfg = {});

// Distance field in the meridian half-plane (s, phi) of a warped metric,
// dl^2 = lapse^2 ds^2 + f^2 dphi^2, from a source at (s_center, 0).
// Godunov fast sweeping on the diagonal metric, with pointwise Richardson
// extrapolation over one grid refinement. The pole column carries a tiny
// positive angular weight, which identifies it up to negligible cost.
class MeridianDistance {
 public:
  MeridianDistance(const WarpedMetric& m, double s_center, double s_lo,
                   double s_hi, int ns, int nphi, bool richardson = true);

  double operator()(double s, double phi) const;
  double s_lo() const { return s_lo_; }
  double s_hi() const { return s_hi_; }

  // Volume of the sublevel set {distance < r} against the metric volume
  // element, by cell-fraction quadrature on the meridian grid.
  double ball_volume(const WarpedMetric& m, double r) const;

 private:
  double s_lo_, s_hi_, ds_, dphi_;
  int ns_, nphi_;
  std::vector<double> dist_;
};

}  // namespace pflow::metrics

#endif

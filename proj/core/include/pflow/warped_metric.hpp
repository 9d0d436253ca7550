#ifndef PFLOW_WARPED_METRIC_HPP
#define PFLOW_WARPED_METRIC_HPP

#include <functional>
#include <memory>
#include <string>
#include <vector>

namespace pflow::metrics {

enum class WarpKind {
  euclidean,      // f(s) = s
  space_form,     // f(s) = sinh(sqrt(a) s)/sqrt(a), scalar curvature -6a
  sphere_patch,   // f(s) = sin(sqrt(a) s)/sqrt(a),  scalar curvature +6a
  schwarzschild,  // isotropic chart: f(s) = s (1 + m/2s)^2, lapse (1 + m/2s)^2
  sampled,        // tabulated warp, derivatives by finite differences
  custom,         // closed-form warp supplied by the caller (e.g. mollified)
};

std::string to_string(WarpKind k);

// Scalar curvature evaluation. `defect` is set instead of a value when the
// warp is not twice differentiable at the requested radius.
struct CurvatureValue {
  double value = 0.0;
  bool defect = false;
};

// Spherically symmetric 3-metric
//
//   g = lapse(s)^2 ds^2 + warp(s)^2 g_{S^2},   s in [s_min, s_max].
//
// Smooth-pole kinds have s_min = 0 with warp(0) = 0 and d(warp)/d(arclength)
// -> 1 at the pole. The schwarzschild kind lives on the isotropic chart and
// starts at the horizon s_min = m/2, where the warp equals the horizon area
// radius 2m. Instances are immutable; all evaluations are pure.
class WarpedMetric {
 public:
  static WarpedMetric euclidean(double s_max);
  static WarpedMetric space_form(double a, double s_max);
  static WarpedMetric sphere_patch(double a, double s_max);
  static WarpedMetric schwarzschild(double m, double s_max);

  // Tabulated warp on a uniform s-grid starting at 0. `modulus` bounds the
  // admissible jump between adjacent samples per unit spacing.
  static WarpedMetric from_samples(const std::vector<double>& values,
                                   double spacing, double modulus);

  // Closed-form custom warp. Derivative callbacks may be empty, in which
  // case finite differences with stencil fd_stencil are used and curvature
  // requests inside `kinks` neighborhoods are flagged as defects.
  struct CustomSpec {
    std::function<double(double)> f;
    std::function<double(double)> df;
    std::function<double(double)> d2f;
    std::function<double(double)> lapse;     // empty -> 1
    std::function<double(double)> dlapse;    // empty -> 0
    double s_min = 0.0;
    double s_max = 0.0;
    bool smooth_pole = true;
    std::vector<double> kinks;
    double fd_stencil = 1e-5;
    std::string label = "custom";
  };
  static WarpedMetric custom(CustomSpec spec);

  WarpKind kind() const { return kind_; }
  const std::string& label() const { return label_; }
  double s_min() const { return s_min_; }
  double s_max() const { return s_max_; }
  bool smooth_pole() const { return smooth_pole_; }
  const std::vector<double>& kinks() const { return kinks_; }
  const std::vector<double>& params() const { return params_; }

  double warp(double s) const;
  double warp_d1(double s) const;
  double warp_d2(double s) const;
  double lapse(double s) const;
  double lapse_d1(double s) const;

  // d(warp)/d(arclength)
  double df_dl(double s) const { return warp_d1(s) / lapse(s); }

  // 4 pi warp(s)^2
  double sphere_area(double s) const;

  // Volume of {s' < s} by adaptive quadrature of 4 pi f^2 lapse,
  // relative tolerance 1e-12.
  double ball_volume(double s) const;

  // Arclength from s_min.
  double arclength(double s) const;

  // R(s) = -4 f''/f + 2 (1 - f'^2)/f^2 with derivatives in arclength.
  CurvatureValue scalar_curvature(double s) const;

  // Uniform ellipticity ratio of g against the flat chart metric on
  // [lo, hi] (max of lapse^2 and (f/s)^2 spreads). Diagnostic only.
  void check_domain(double s) const;

 private:
  WarpedMetric() = default;

  WarpKind kind_ = WarpKind::euclidean;
  std::string label_;
  std::vector<double> params_;
  double s_min_ = 0.0;
  double s_max_ = 0.0;
  bool smooth_pole_ = true;
  std::vector<double> kinks_;
  double fd_stencil_ = 1e-5;

  std::function<double(double)> f_, df_, d2f_, lapse_, dlapse_;

  // sampled kind
  std::vector<double> samples_;
  double spacing_ = 0.0;

  double sampled_value(double s) const;
  void validate() const;
};

// Spec-facing constructor: dispatches on kind name with positional params
//   euclidean: {s_max}
//   space_form: {a, s_max}
//   sphere_patch: {a, s_max}
//   schwarzschild: {m, s_max}
WarpedMetric build_warped(const std::string& kind, const std::vector<double>& params);

}  // namespace pflow::metrics

#endif

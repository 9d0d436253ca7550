#include "pflow/warped_metric.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "pflow/numerics.hpp"

namespace pflow::metrics {

namespace {
constexpr double kPi = std::numbers::pi;
}

std::string to_string(WarpKind k) {
  switch (k) {
    case WarpKind::euclidean: return "euclidean";
    case WarpKind::space_form: return "space_form";
    case WarpKind::sphere_patch: return "sphere_patch";
    case WarpKind::schwarzschild: return "schwarzschild";
    case WarpKind::sampled: return "sampled";
    case WarpKind::custom: return "custom";
  }
  return "unknown";
}

WarpedMetric WarpedMetric::euclidean(double s_max) {
  if (!(s_max > 0)) throw std::invalid_argument("euclidean: s_max must be positive");
  WarpedMetric m;
  m.kind_ = WarpKind::euclidean;
  m.label_ = "euclidean";
  m.s_max_ = s_max;
  m.f_ = [](double s) { return s; };
  m.df_ = [](double) { return 1.0; };
  m.d2f_ = [](double) { return 0.0; };
  m.validate();
  return m;
}

WarpedMetric WarpedMetric::space_form(double a, double s_max) {
  if (!(a > 0)) throw std::invalid_argument("space_form: curvature scale a must be positive");
  if (!(s_max > 0)) throw std::invalid_argument("space_form: s_max must be positive");
  WarpedMetric m;
  m.kind_ = WarpKind::space_form;
  m.label_ = "space_form";
  m.params_ = {a};
  m.s_max_ = s_max;
  const double ra = std::sqrt(a);
  m.f_ = [ra](double s) { return std::sinh(ra * s) / ra; };
  m.df_ = [ra](double s) { return std::cosh(ra * s); };
  m.d2f_ = [ra](double s) { return ra * std::sinh(ra * s); };
  m.validate();
  return m;
}

WarpedMetric WarpedMetric::sphere_patch(double a, double s_max) {
  if (!(a > 0)) throw std::invalid_argument("sphere_patch: curvature scale a must be positive");
  const double ra = std::sqrt(a);
  if (!(s_max > 0) || s_max >= kPi / ra)
    throw std::invalid_argument("sphere_patch: need 0 < s_max < pi/sqrt(a)");
  WarpedMetric m;
  m.kind_ = WarpKind::sphere_patch;
  m.label_ = "sphere_patch";
  m.params_ = {a};
  m.s_max_ = s_max;
  m.f_ = [ra](double s) { return std::sin(ra * s) / ra; };
  m.df_ = [ra](double s) { return std::cos(ra * s); };
  m.d2f_ = [ra](double s) { return -ra * std::sin(ra * s); };
  m.validate();
  return m;
}

WarpedMetric WarpedMetric::schwarzschild(double mass, double s_max) {
  if (!(mass > 0)) throw std::invalid_argument("schwarzschild: mass must be positive");
  if (!(s_max > mass / 2))
    throw std::invalid_argument("schwarzschild: s_max must exceed the horizon m/2");
  WarpedMetric m;
  m.kind_ = WarpKind::schwarzschild;
  m.label_ = "schwarzschild";
  m.params_ = {mass};
  m.s_min_ = mass / 2;
  m.s_max_ = s_max;
  m.smooth_pole_ = false;
  m.f_ = [mass](double s) { return s + mass + mass * mass / (4 * s); };
  m.df_ = [mass](double s) { return 1.0 - mass * mass / (4 * s * s); };
  m.d2f_ = [mass](double s) { return mass * mass / (2 * s * s * s); };
  m.lapse_ = [mass](double s) {
    const double u = 1.0 + mass / (2 * s);
    return u * u;
  };
  m.dlapse_ = [mass](double s) {
    return -(mass / (s * s)) * (1.0 + mass / (2 * s));
  };
  m.validate();
  return m;
}

WarpedMetric WarpedMetric::from_samples(const std::vector<double>& values,
                                        double spacing, double modulus) {
  if (values.size() < 4) throw std::invalid_argument("sampled warp: need at least 4 samples");
  if (!(spacing > 0)) throw std::invalid_argument("sampled warp: spacing must be positive");
  if (values.front() != 0.0)
    throw std::invalid_argument("sampled warp: first sample must be 0");
  for (size_t i = 1; i < values.size(); ++i) {
    if (!(values[i] > 0))
      throw std::invalid_argument("sampled warp: non-positive warp sample at index " +
                                  std::to_string(i));
    if (std::abs(values[i] - values[i - 1]) > modulus * spacing)
      throw std::invalid_argument(
          "sampled warp: discontinuous samples (jump exceeds declared modulus) at index " +
          std::to_string(i));
  }
  WarpedMetric m;
  m.kind_ = WarpKind::sampled;
  m.label_ = "sampled";
  m.s_max_ = spacing * static_cast<double>(values.size() - 1);
  m.samples_ = values;
  m.spacing_ = spacing;
  m.fd_stencil_ = spacing;
  m.validate();
  return m;
}

WarpedMetric WarpedMetric::custom(CustomSpec spec) {
  if (!spec.f) throw std::invalid_argument("custom warp: missing warp function");
  if (!(spec.s_max > spec.s_min))
    throw std::invalid_argument("custom warp: empty domain");
  WarpedMetric m;
  m.kind_ = WarpKind::custom;
  m.label_ = spec.label;
  m.s_min_ = spec.s_min;
  m.s_max_ = spec.s_max;
  m.smooth_pole_ = spec.smooth_pole;
  m.kinks_ = spec.kinks;
  m.fd_stencil_ = spec.fd_stencil;
  m.f_ = std::move(spec.f);
  m.df_ = std::move(spec.df);
  m.d2f_ = std::move(spec.d2f);
  m.lapse_ = std::move(spec.lapse);
  m.dlapse_ = std::move(spec.dlapse);
  m.validate();
  return m;
}

void WarpedMetric::validate() const {
  const double probe = s_min_ + 0.37 * (s_max_ - s_min_);
  if (!(warp(probe) > 0) || !(warp(s_max_) > 0))
    throw std::invalid_argument("warped metric: warp must be positive in the interior");
  if (smooth_pole_ && s_min_ == 0.0) {
    const double h = std::min(1e-4, s_max_ / 64);
    const double d0 = (warp(2 * h) - warp(h)) / h / lapse(h);
    if (std::abs(d0 - 1.0) > 0.05)
      throw std::invalid_argument("warped metric: smooth pole requires f'(0+) = 1");
  }
}

void WarpedMetric::check_domain(double s) const {
  if (!(s >= s_min_ - 1e-12) || !(s <= s_max_ + 1e-12))
    throw std::invalid_argument("warped metric: radius " + std::to_string(s) +
                                " outside domain [" + std::to_string(s_min_) + ", " +
                                std::to_string(s_max_) + "]");
}

double WarpedMetric::sampled_value(double s) const {
  const double x = s / spacing_;
  const auto n = samples_.size();
  if (x <= 0) return samples_.front();
  if (x >= static_cast<double>(n - 1)) return samples_.back();
  const auto i = static_cast<size_t>(x);
  const double t = x - static_cast<double>(i);
  return samples_[i] * (1 - t) + samples_[i + 1] * t;
}

double WarpedMetric::warp(double s) const {
  if (kind_ == WarpKind::sampled) return sampled_value(s);
  return f_(s);
}

double WarpedMetric::warp_d1(double s) const {
  if (df_) return df_(s);
  const double h = fd_stencil_;
  const auto f = [this](double t) { return warp(t); };
  if (s - h < s_min_) return (warp(s + h) - warp(s)) / h;
  return num::fd1(f, s, h);
}

double WarpedMetric::warp_d2(double s) const {
  if (d2f_) return d2f_(s);
  const double h = fd_stencil_;
  const auto f = [this](double t) { return warp(t); };
  return num::fd2(f, s, h);
}

double WarpedMetric::lapse(double s) const { return lapse_ ? lapse_(s) : 1.0; }

double WarpedMetric::lapse_d1(double s) const { return dlapse_ ? dlapse_(s) : 0.0; }

double WarpedMetric::sphere_area(double s) const {
  check_domain(s);
  const double f = warp(s);
  return 4 * kPi * f * f;
}

double WarpedMetric::ball_volume(double s) const {
  check_domain(s);
  const auto integrand = [this](double t) {
    const double f = warp(t);
    return 4 * kPi * f * f * lapse(t);
  };
  return num::integrate_split(integrand, s_min_, s, kinks_, 1e-12);
}

double WarpedMetric::arclength(double s) const {
  check_domain(s);
  if (!lapse_) return s - s_min_;
  return num::integrate_split([this](double t) { return lapse(t); }, s_min_, s,
                              kinks_, 1e-12);
}

CurvatureValue WarpedMetric::scalar_curvature(double s) const {
  check_domain(s);
  if (smooth_pole_ && s <= 0)
    throw std::invalid_argument("scalar_curvature: evaluation at the pole");

  // Flag non-smooth points instead of differentiating across them.
  if (kind_ == WarpKind::sampled) {
    const double h = fd_stencil_;
    const auto f = [this](double t) { return warp(t); };
    if (s - 4 * h < 0 || s + 4 * h > s_max_) return {0.0, true};
    const double d2a = num::fd2(f, s, 2 * h);
    const double d2b = num::fd2(f, s, 4 * h);
    const double scale = std::max({std::abs(d2a), std::abs(d2b), 1e-6 / (h * h) * 1e-6});
    if (std::abs(d2a - d2b) > 0.3 * scale && std::abs(d2a - d2b) > 1e-9 / (h * h))
      return {0.0, true};
    const double fd1v = num::fd1(f, s, 2 * h);
    const double fv = warp(s);
    return {-4 * d2a / fv + 2 * (1 - fd1v * fd1v) / (fv * fv), false};
  }
  for (double kink : kinks_) {
    if (std::abs(s - kink) < 4 * fd_stencil_ && (!df_ || !d2f_)) return {0.0, true};
  }

  const double b = lapse(s);
  const double fl = warp_d1(s) / b;                                   // df/dl
  const double fll = (warp_d2(s) * b - warp_d1(s) * lapse_d1(s)) / (b * b * b);
  const double fv = warp(s);
  return {-4 * fll / fv + 2 * (1 - fl * fl) / (fv * fv), false};
}

WarpedMetric build_warped(const std::string& kind, const std::vector<double>& params) {
  const auto need = [&](size_t n) {
    if (params.size() != n)
      throw std::invalid_argument("build_warped: kind '" + kind + "' expects " +
                                  std::to_string(n) + " parameter(s)");
  };
  if (kind == "euclidean") {
    need(1);
    return WarpedMetric::euclidean(params[0]);
  }
  if (kind == "space_form") {
    need(2);
    return WarpedMetric::space_form(params[0], params[1]);
  }
  if (kind == "sphere_patch") {
    need(2);
    return WarpedMetric::sphere_patch(params[0], params[1]);
  }
  if (kind == "schwarzschild") {
    need(2);
    return WarpedMetric::schwarzschild(params[0], params[1]);
  }
  throw std::invalid_argument("build_warped: unknown kind '" + kind + "'");
}

}  // namespace pflow::metrics

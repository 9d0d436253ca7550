#include "pflow/deficit.hpp"

#include <cmath>
#include <mutex>
#include <numbers>
#include <stdexcept>

#include "pflow/numerics.hpp"

namespace pflow::metrics {

namespace {

constexpr double kPi = std::numbers::pi;

double deficit(const WarpedMetric& m, double r) {
  const double s = m.s_min() + r;
  const double v = m.ball_volume(s);
  const double p = m.sphere_area(s);
  return v - std::pow(p, 1.5) / (6 * std::sqrt(kPi));
}

// Leading coefficient a of deficit(r) = a r^5 + b r^7 + ...
double fit_leading(const WarpedMetric& m, const std::vector<double>& r_seq,
                   double* residual) {
  std::vector<double> xs(r_seq.begin(), r_seq.end());
  std::vector<double> ys;
  ys.reserve(xs.size());
  for (double r : xs) ys.push_back(deficit(m, r));
  const auto coeff = num::lls_fit(
      xs, ys,
      {[](double r) { return std::pow(r, 5); }, [](double r) { return std::pow(r, 7); }});
  if (residual) {
    double ss = 0.0;
    double scale = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
      const double fit = coeff[0] * std::pow(xs[i], 5) + coeff[1] * std::pow(xs[i], 7);
      ss += (ys[i] - fit) * (ys[i] - fit);
      scale += ys[i] * ys[i];
    }
    *residual = scale > 0 ? std::sqrt(ss / scale) : std::sqrt(ss / xs.size());
  }
  return coeff[0];
}

double calibrate() {
  // Unit round sphere patch: R = 6 identically.
  const auto sphere = WarpedMetric::sphere_patch(1.0, 1.5);
  std::vector<double> r_seq;
  for (int k = 0; k < 8; ++k) r_seq.push_back(0.4 * std::pow(0.75, k));
  const double a = fit_leading(sphere, r_seq, nullptr);
  return 6.0 / a;
}

}  // namespace

double deficit_calibration_constant() {
  static std::once_flag flag;
  static double c = 0.0;
  std::call_once(flag, [] { c = calibrate(); });
  return c;
}

DeficitEstimate deficit_scalar_estimate(const WarpedMetric& m,
                                        const std::vector<double>& r_seq) {
  if (r_seq.size() < 3)
    throw std::invalid_argument("deficit_scalar_estimate: need at least 3 radii");
  for (std::size_t i = 1; i < r_seq.size(); ++i)
    if (!(r_seq[i] < r_seq[i - 1]))
      throw std::invalid_argument("deficit_scalar_estimate: radii must decrease");
  if (m.s_min() + r_seq.front() > m.s_max())
    throw std::invalid_argument("deficit_scalar_estimate: largest radius outside domain");

  DeficitEstimate out;
  double residual = 0.0;
  const double a = fit_leading(m, r_seq, &residual);
  out.curvature = deficit_calibration_constant() * a;
  out.fit_residual = residual;
  out.converged = residual < 0.05;
  return out;
}

}  // namespace pflow::metrics

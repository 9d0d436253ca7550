#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "pflow/potential.hpp"

namespace pflow::pharmonic {

namespace {
constexpr double kPi = std::numbers::pi;
constexpr double kTail = 45.0;  // exp(-45) ~ 3e-20: quadrature tail cut
}

std::vector<double> SolverConfig::dyadic_schedule(int k_min, int k_max) {
  std::vector<double> out;
  for (int k = k_min; k <= k_max; ++k) out.push_back(1.0 + std::pow(2.0, -k));
  return out;
}

void SolverConfig::validate(double r_outer) const {
  if (p_schedule.empty()) throw std::invalid_argument("SolverConfig: empty p schedule");
  double prev = 3.0;
  for (double p : p_schedule) {
    if (!(p > 1.0) || !(p < 3.0))
      throw std::invalid_argument("SolverConfig: p must lie in (1, 3)");
    if (!(p < prev)) throw std::invalid_argument("SolverConfig: schedule must decrease");
    prev = p;
  }
  if (eps_inner > 0 && !(eps_inner < r_outer / 10))
    throw std::invalid_argument("SolverConfig: eps_inner must be < R/10");
}

RadialPotential::RadialPotential(const WarpedMetric& m, double p, double r_outer)
    : metric_(std::make_shared<WarpedMetric>(m)), p_(p), eps_(p - 1), r_outer_(r_outer) {
  if (!(p > 1.0) || !(p < 3.0))
    throw std::invalid_argument("RadialPotential: p must lie in (1, 3)");
  if (!(r_outer > m.s_min()) || r_outer > m.s_max())
    throw std::invalid_argument("RadialPotential: R outside the metric domain");
  log_q_ = std::log((3.0 - p) / eps_);

  // Tabulate log A with nodes clustered at the pole (log spacing) or at an
  // inner minimal sphere where A' vanishes (square-root spacing); the warp
  // must increase strictly above s_min up to R.
  const int n = 2400;
  const bool pole = m.smooth_pole() && m.s_min() == 0.0;
  const double s_lo = pole ? r_outer * 1e-5 : m.s_min();
  std::vector<double> ss(n), la(n), phi(n);
  for (int i = 0; i < n; ++i) {
    double s;
    if (pole) {
      const double t = static_cast<double>(i) / (n - 1);
      s = s_lo * std::pow(r_outer / s_lo, t);
    } else {
      const double t = static_cast<double>(i + 1) / n;
      s = s_lo + (r_outer - s_lo) * t * t;
    }
    ss[i] = s;
    const double f = m.warp(s);
    const double df = m.warp_d1(s);
    if (!(f > 0) || !(df > 0))
      throw std::invalid_argument(
          "RadialPotential: warp must be positive and strictly increasing up to R");
    la[i] = std::log(4 * kPi) + 2 * std::log(f);
    phi[i] = m.lapse(s) * f / (2 * df);  // lapse * A/A'
  }
  log_area_outer_ = la.back();
  log_area_ = num::MonotoneCubic(ss, la);
  s_of_logarea_ = num::MonotoneCubic(la, ss);
  phi_of_logarea_ = num::MonotoneCubic(la, phi);
}

double RadialPotential::s_min() const { return metric_->s_min(); }

double RadialPotential::arclength(double s) const { return metric_->arclength(s); }

double RadialPotential::laplace_integral(double s) const {
  const double la0 = log_area_(s);
  const double y_max = std::min((log_area_outer_ - la0) / eps_, kTail);
  if (y_max <= 0) return 0.0;
  const auto integrand = [&](double y) {
    return std::exp(-y) * phi_of_logarea_(la0 + eps_ * y);
  };
  return num::integrate(integrand, 0.0, y_max, 1e-11);
}

double RadialPotential::log_green(double s) const {
  if (!(s > metric_->s_min()) || !(s <= r_outer_))
    throw std::invalid_argument("RadialPotential: radius outside (s_min, R]");
  if (s == r_outer_) return -std::numeric_limits<double>::infinity();
  const double j = laplace_integral(s);
  // log G = log(4 pi)/eps + log q + (-log A(s)/eps + log(eps J))
  return (std::log(4 * kPi) - log_area_(s)) / eps_ + log_q_ + std::log(eps_ * j);
}

double RadialPotential::w(double s) const {
  // w = -(p-1) log G, assembled without the 1/eps cancellation
  const double j = laplace_integral(s);
  return log_area_(s) - std::log(4 * kPi) - eps_ * (log_q_ + std::log(eps_ * j));
}

double RadialPotential::grad_w(double s) const {
  const double j = laplace_integral(s);
  if (j <= 0) return std::numeric_limits<double>::infinity();
  return 1.0 / j;
}

double RadialPotential::grad_green_mag(double s) const {
  // |dG/dl| = c_norm^{1/eps} A(s)^{-1/eps}
  const double lg = (std::log(4 * kPi) - log_area_(s)) / eps_ + log_q_;
  return std::exp(lg);
}

double RadialPotential::w_inverse(double t) const {
  const double lo = s_of_logarea_.x_front();
  double s_lo = s_of_logarea_(lo) * 1.0000001;
  double s_hi = r_outer_ * 0.999999999;
  const double w_lo = w(s_lo), w_hi = w(s_hi);
  if (t <= w_lo || t >= w_hi)
    throw std::invalid_argument("RadialPotential::w_inverse: level outside range [" +
                                std::to_string(w_lo) + ", " + std::to_string(w_hi) + "]");
  return num::find_root([&](double s) { return w(s) - t; }, s_lo, s_hi, 1e-14);
}

CapacityReport radial_capacity(const WarpedMetric& m, double a, double r_outer, double p) {
  if (!(a > m.s_min()) || !(a < r_outer))
    throw std::invalid_argument("radial_capacity: need s_min < a < R");
  const RadialPotential g(m, p, r_outer);
  const double log_ga = g.log_green(a);

  // Energy route: int_a^R (|dG/dl| / G(a))^p A lapse ds.
  const auto integrand = [&](double s) {
    const double log_term = p * (std::log(g.grad_green_mag(s)) - log_ga);
    const double f = m.warp(s);
    return std::exp(log_term) * 4 * kPi * f * f * m.lapse(s);
  };
  const double energy = num::integrate_split(integrand, a, r_outer, m.kinks(), 1e-11);

  // Law route: Cap = c_norm / G(a)^{p-1} (independent algebraic path).
  const double c_norm = 4 * kPi * std::pow((3 - p) / (p - 1), p - 1);
  const double law = c_norm * std::exp(-(p - 1) * log_ga);

  CapacityReport rep;
  rep.set_descriptor = "ball(a=" + std::to_string(a) + ")";
  rep.capacity = energy;
  rep.energy = energy;
  rep.residual = std::abs(energy - law) / law;
  return rep;
}

CapacityReport radial_sublevel_capacity(const RadialPotential& field, double t) {
  const double s_t = field.w_inverse(t);
  auto rep = radial_capacity(field.metric(), s_t, field.r_outer(), field.p());
  rep.set_descriptor = "sublevel(t=" + std::to_string(t) + ")";
  return rep;
}

ImcfLimit imcf_limit(const WarpedMetric& m, double r_outer, const SolverConfig& cfg) {
  cfg.validate(r_outer);
  if (!(cfg.annulus_lo > m.s_min()) || !(cfg.annulus_hi > cfg.annulus_lo) ||
      cfg.annulus_hi > r_outer)
    throw std::invalid_argument("imcf_limit: bad convergence annulus");

  const int n_samples = 160;
  std::vector<double> samples(n_samples);
  for (int i = 0; i < n_samples; ++i)
    samples[i] = cfg.annulus_lo +
                 (cfg.annulus_hi - cfg.annulus_lo) * i / (n_samples - 1.0);

  ImcfLimit out;
  std::vector<double> prev_w;
  for (double p : cfg.p_schedule) {
    auto field = std::make_shared<RadialPotential>(m, p, r_outer);
    std::vector<double> cur(n_samples);
    for (int i = 0; i < n_samples; ++i) cur[i] = field->w(samples[i]);
    out.p_used.push_back(p);
    out.field = std::move(field);
    if (!prev_w.empty()) {
      double gap = 0.0;
      for (int i = 0; i < n_samples; ++i)
        gap = std::max(gap, std::abs(cur[i] - prev_w[i]));
      out.cauchy_gap = gap;
      if (gap < cfg.cauchy_tol) {
        out.converged = true;
        return out;
      }
    }
    prev_w = std::move(cur);
  }
  out.converged = false;  // schedule exhausted before tolerance
  return out;
}

}  // namespace pflow::pharmonic

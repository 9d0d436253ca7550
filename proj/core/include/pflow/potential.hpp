#ifndef PFLOW_POTENTIAL_HPP
#define PFLOW_POTENTIAL_HPP

#include <memory>
#include <string>
#include <vector>

#include "pflow/numerics.hpp"
#include "pflow/warped_metric.hpp"

namespace pflow::pharmonic {

using metrics::WarpedMetric;

// Continuation / solver parameters. p_schedule drives the p -> 1 limit;
// the grid solver uses energy_tol / max_iterations / eps_inner.
struct SolverConfig {
  std::vector<double> p_schedule;
  double energy_tol = 1e-10;
  int max_iterations = 400;
  double eps_inner = 0.0;
  double annulus_lo = 0.0, annulus_hi = 0.0;
  double cauchy_tol = 1e-6;

  // p_k = 1 + 2^-k for k in [k_min, k_max]
  static std::vector<double> dyadic_schedule(int k_min, int k_max);
  void validate(double r_outer) const;
};

// Normalized p-harmonic Green function of a warped metric on {s < R},
// pole at s_min:
//
//   G(s) = c_norm^{1/(p-1)} * int_s^R A(t)^{-1/(p-1)} lapse(t) dt,
//   c_norm = 4 pi ((3-p)/(p-1))^{p-1},
//
// so that G(s) s^{(3-p)/(p-1)} -> 1 at a smooth pole. All evaluations run in
// the log domain through the substitution y = (log A(t) - log A(s))/(p-1),
// which stays stable arbitrarily close to p = 1. The sphere-area table is
// cached as a monotone cubic, so the warp must be strictly increasing.
class RadialPotential {
 public:
  RadialPotential(const WarpedMetric& m, double p, double r_outer);

  double p() const { return p_; }
  double r_outer() const { return r_outer_; }
  const WarpedMetric& metric() const { return *metric_; }

  double log_green(double s) const;
  double green(double s) const { return std::exp(log_green(s)); }
  double w(double s) const;          // -(p-1) log G, increasing in s
  double grad_w(double s) const;     // |grad w| in arclength
  double grad_green_mag(double s) const;  // |dG/dl|
  double w_inverse(double t) const;  // radius of the t-level of w

  double s_min() const;
  // Arclength distance from the pole (d(o, .) for bound measurements).
  double arclength(double s) const;

 private:
  std::shared_ptr<const WarpedMetric> metric_;
  double p_ = 0.0;
  double eps_ = 0.0;  // p - 1
  double r_outer_ = 0.0;
  double log_q_ = 0.0;

  num::MonotoneCubic log_area_;      // u -> log A(s(u)) with u the table variable
  num::MonotoneCubic s_of_logarea_;  // log A -> s
  num::MonotoneCubic phi_of_logarea_;  // log A -> lapse * A / A'
  double log_area_outer_ = 0.0;

  double laplace_integral(double s) const;  // J(s) = int e^-y phi(log A(s) + eps y) dy
};

// p-capacity of the centered ball {s <= a} in {s < R}, by the p-Dirichlet
// energy quadrature of the capacitary minimizer G/G(a). The report's
// residual is the relative mismatch against the capacity law route
// Cap = c_norm / G(a)^{p-1}, an independent algebraic path.
struct CapacityReport {
  std::string set_descriptor;
  double capacity = 0.0;
  double energy = 0.0;
  double residual = 0.0;
};

CapacityReport radial_capacity(const WarpedMetric& m, double a, double r_outer, double p);

// Capacity of a sublevel set {w_p <= t} of the radial potential.
CapacityReport radial_sublevel_capacity(const RadialPotential& field, double t);

// Deterministic p -> 1 continuation: runs the schedule, stops when the
// sup-difference of consecutive w_p on the annulus drops below cauchy_tol.
// Exhausting the schedule first returns the last iterate with converged =
// false; near-Cauchy failure is surfaced, never silently resolved.
struct ImcfLimit {
  std::shared_ptr<RadialPotential> field;
  double cauchy_gap = 0.0;
  bool converged = false;
  std::vector<double> p_used;
};

ImcfLimit imcf_limit(const WarpedMetric& m, double r_outer, const SolverConfig& cfg);

}  // namespace pflow::pharmonic

#endif

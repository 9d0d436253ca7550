#ifndef PFLOW_NUMERICS_HPP
#define PFLOW_NUMERICS_HPP

#include <functional>
#include <vector>

namespace pflow::num {

using Fn = std::function<double(double)>;

// Adaptive Gauss-Kronrod (G7,K15) quadrature of f over [a, b].
// Terminates when the local error estimate is below
// rel_tol * |integral| + abs_tol on every subinterval.
double integrate(const Fn& f, double a, double b, double rel_tol = 1e-12,
                 double abs_tol = 0.0);

// Same, but pre-splits [a, b] at the given interior breakpoints
// (e.g. kinks of the integrand).
double integrate_split(const Fn& f, double a, double b,
                       const std::vector<double>& breakpoints,
                       double rel_tol = 1e-12, double abs_tol = 0.0);

// Brent root finding on a bracket [a, b] with f(a), f(b) of opposite sign.
double find_root(const Fn& f, double a, double b, double x_tol = 1e-14);

// Central finite differences.
double fd1(const Fn& f, double x, double h);
double fd2(const Fn& f, double x, double h);

// Least squares fit of ys ~ sum_k c_k * basis[k](x) via normal equations.
// Intended for small k (2-3 coefficients).
std::vector<double> lls_fit(const std::vector<double>& xs,
                            const std::vector<double>& ys,
                            const std::vector<Fn>& basis);

// Slope of the least squares line through (xs, ys).
double lls_slope(const std::vector<double>& xs, const std::vector<double>& ys);

// Monotone C^1 cubic interpolant (Fritsch-Carlson slopes). Evaluations
// clamp to the table range.
class MonotoneCubic {
 public:
  MonotoneCubic() = default;
  MonotoneCubic(std::vector<double> xs, std::vector<double> ys);

  double operator()(double x) const;
  double derivative(double x) const;
  double x_front() const { return xs_.front(); }
  double x_back() const { return xs_.back(); }

 private:
  std::vector<double> xs_, ys_, slopes_;
  std::size_t locate(double x) const;
};

}  // namespace pflow::num

#endif

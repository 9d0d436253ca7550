#include "pflow/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace pflow::num {

namespace {

// QUADPACK (G7,K15) nodes and weights on [-1, 1].
constexpr double kXgk[8] = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144838258730, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr double kWgk[8] = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr double kWg[4] = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct GkResult {
  double value;
  double error;
};

GkResult gk15(const Fn& f, double a, double b) {
  const double c = 0.5 * (a + b);
  const double h = 0.5 * (b - a);
  const double fc = f(c);
  double result_g = fc * kWg[3];
  double result_k = fc * kWgk[7];
  for (int j = 0; j < 7; ++j) {
    const double x = h * kXgk[j];
    const double f1 = f(c - x);
    const double f2 = f(c + x);
    result_k += kWgk[j] * (f1 + f2);
    if (j % 2 == 1) result_g += kWg[j / 2] * (f1 + f2);
  }
  result_g *= h;
  result_k *= h;
  double err = std::abs(result_k - result_g);
  // QUADPACK-style sharpening of the raw error estimate.
  if (err != 0.0) err = std::pow(200.0 * err, 1.5);
  return {result_k, std::min(std::abs(result_k - result_g), err)};
}

void adapt(const Fn& f, double a, double b, double rel_tol, double abs_tol,
           int depth, double& acc) {
  const GkResult r = gk15(f, a, b);
  const double tol = std::max(abs_tol, rel_tol * std::abs(r.value));
  if (r.error <= tol || depth >= 48 || b - a < 1e-15 * (std::abs(a) + 1.0)) {
    acc += r.value;
    return;
  }
  const double c = 0.5 * (a + b);
  adapt(f, a, c, rel_tol, abs_tol, depth + 1, acc);
  adapt(f, c, b, rel_tol, abs_tol, depth + 1, acc);
}

}  // namespace

double integrate(const Fn& f, double a, double b, double rel_tol, double abs_tol) {
  if (a == b) return 0.0;
  double sign = 1.0;
  if (a > b) {
    std::swap(a, b);
    sign = -1.0;
  }
  double acc = 0.0;
  // Scale the per-interval tolerance by a first whole-interval estimate so
  // that relative control refers to the full integral, not each leaf.
  const GkResult coarse = gk15(f, a, b);
  const double leaf_abs = std::max(abs_tol, 0.25 * rel_tol * std::abs(coarse.value));
  adapt(f, a, b, rel_tol, leaf_abs, 0, acc);
  return sign * acc;
}

double integrate_split(const Fn& f, double a, double b,
                       const std::vector<double>& breakpoints, double rel_tol,
                       double abs_tol) {
  if (a == b) return 0.0;
  double sign = 1.0;
  if (a > b) {
    std::swap(a, b);
    sign = -1.0;
  }
  std::vector<double> pts{a};
  for (double p : breakpoints)
    if (p > a && p < b) pts.push_back(p);
  pts.push_back(b);
  std::sort(pts.begin(), pts.end());
  double acc = 0.0;
  for (size_t i = 0; i + 1 < pts.size(); ++i)
    acc += integrate(f, pts[i], pts[i + 1], rel_tol, abs_tol);
  return sign * acc;
}

double find_root(const Fn& f, double a, double b, double x_tol) {
  double fa = f(a), fb = f(b);
  if (fa == 0) return a;
  if (fb == 0) return b;
  if (fa * fb > 0) throw std::invalid_argument("find_root: no sign change on bracket");
  double c = a, fc = fa, d = b - a, e = d;
  for (int iter = 0; iter < 200; ++iter) {
    if (std::abs(fc) < std::abs(fb)) {
      a = b;
      b = c;
      c = a;
      fa = fb;
      fb = fc;
      fc = fa;
    }
    const double tol = 2.0 * 1e-16 * std::abs(b) + 0.5 * x_tol;
    const double m = 0.5 * (c - b);
    if (std::abs(m) <= tol || fb == 0.0) return b;
    if (std::abs(e) < tol || std::abs(fa) <= std::abs(fb)) {
      d = m;
      e = m;
    } else {
      double p, q;
      const double s = fb / fa;
      if (a == c) {
        p = 2.0 * m * s;
        q = 1.0 - s;
      } else {
        const double qq = fa / fc;
        const double r = fb / fc;
        p = s * (2.0 * m * qq * (qq - r) - (b - a) * (r - 1.0));
        q = (qq - 1.0) * (r - 1.0) * (s - 1.0);
      }
      if (p > 0)
        q = -q;
      else
        p = -p;
      if (2.0 * p < std::min(3.0 * m * q - std::abs(tol * q), std::abs(e * q))) {
        e = d;
        d = p / q;
      } else {
        d = m;
        e = m;
      }
    }
    a = b;
    fa = fb;
    b += (std::abs(d) > tol) ? d : (m > 0 ? tol : -tol);
    fb = f(b);
    if ((fb > 0) == (fc > 0)) {
      c = a;
      fc = fa;
      e = b - a;
      d = e;
    }
  }
  return b;
}

double fd1(const Fn& f, double x, double h) {
  return (f(x + h) - f(x - h)) / (2.0 * h);
}

double fd2(const Fn& f, double x, double h) {
  return (f(x + h) - 2.0 * f(x) + f(x - h)) / (h * h);
}

std::vector<double> lls_fit(const std::vector<double>& xs,
                            const std::vector<double>& ys,
                            const std::vector<Fn>& basis) {
  const size_t k = basis.size();
  if (xs.size() != ys.size() || xs.size() < k)
    throw std::invalid_argument("lls_fit: bad sizes");
  std::vector<double> ata(k * k, 0.0), atb(k, 0.0);
  std::vector<double> row(k);
  for (size_t i = 0; i < xs.size(); ++i) {
    for (size_t j = 0; j < k; ++j) row[j] = basis[j](xs[i]);
    for (size_t r = 0; r < k; ++r) {
      atb[r] += row[r] * ys[i];
      for (size_t c = 0; c < k; ++c) ata[r * k + c] += row[r] * row[c];
    }
  }
  // Gaussian elimination with partial pivoting.
  std::vector<double> sol = atb;
  for (size_t col = 0; col < k; ++col) {
    size_t piv = col;
    for (size_t r = col + 1; r < k; ++r)
      if (std::abs(ata[r * k + col]) > std::abs(ata[piv * k + col])) piv = r;
    if (ata[piv * k + col] == 0) throw std::runtime_error("lls_fit: singular system");
    if (piv != col) {
      for (size_t c = 0; c < k; ++c) std::swap(ata[col * k + c], ata[piv * k + c]);
      std::swap(sol[col], sol[piv]);
    }
    for (size_t r = col + 1; r < k; ++r) {
      const double m = ata[r * k + col] / ata[col * k + col];
      for (size_t c = col; c < k; ++c) ata[r * k + c] -= m * ata[col * k + c];
      sol[r] -= m * sol[col];
    }
  }
  for (size_t col = k; col-- > 0;) {
    for (size_t c = col + 1; c < k; ++c) sol[col] -= ata[col * k + c] * sol[c];
    sol[col] /= ata[col * k + col];
  }
  return sol;
}

double lls_slope(const std::vector<double>& xs, const std::vector<double>& ys) {
  const auto c = lls_fit(xs, ys, {[](double) { return 1.0; }, [](double x) { return x; }});
  return c[1];
}

MonotoneCubic::MonotoneCubic(std::vector<double> xs, std::vector<double> ys)
    : xs_(std::move(xs)), ys_(std::move(ys)) {
  const std::size_t n = xs_.size();
  if (n < 2 || ys_.size() != n)
    throw std::invalid_argument("MonotoneCubic: need matching tables, size >= 2");
  std::vector<double> d(n - 1);
  for (std::size_t i = 0; i + 1 < n; ++i) {
    const double dx = xs_[i + 1] - xs_[i];
    if (!(dx > 0)) throw std::invalid_argument("MonotoneCubic: xs must increase");
    d[i] = (ys_[i + 1] - ys_[i]) / dx;
  }
  slopes_.assign(n, 0.0);
  slopes_[0] = d[0];
  slopes_[n - 1] = d[n - 2];
  for (std::size_t i = 1; i + 1 < n; ++i) {
    if (d[i - 1] * d[i] <= 0) {
      slopes_[i] = 0.0;
    } else {
      const double w1 = 2 * (xs_[i + 1] - xs_[i]) + (xs_[i] - xs_[i - 1]);
      const double w2 = (xs_[i + 1] - xs_[i]) + 2 * (xs_[i] - xs_[i - 1]);
      slopes_[i] = (w1 + w2) / (w1 / d[i - 1] + w2 / d[i]);
    }
  }
}

std::size_t MonotoneCubic::locate(double x) const {
  const auto it = std::upper_bound(xs_.begin(), xs_.end(), x);
  std::size_t i = static_cast<std::size_t>(it - xs_.begin());
  if (i == 0) return 0;
  if (i >= xs_.size()) return xs_.size() - 2;
  return i - 1;
}

double MonotoneCubic::operator()(double x) const {
  x = std::clamp(x, xs_.front(), xs_.back());
  const std::size_t i = locate(x);
  const double h = xs_[i + 1] - xs_[i];
  const double t = (x - xs_[i]) / h;
  const double h00 = (1 + 2 * t) * (1 - t) * (1 - t);
  const double h10 = t * (1 - t) * (1 - t);
  const double h01 = t * t * (3 - 2 * t);
  const double h11 = t * t * (t - 1);
  return h00 * ys_[i] + h10 * h * slopes_[i] + h01 * ys_[i + 1] + h11 * h * slopes_[i + 1];
}

double MonotoneCubic::derivative(double x) const {
  x = std::clamp(x, xs_.front(), xs_.back());
  const std::size_t i = locate(x);
  const double h = xs_[i + 1] - xs_[i];
  const double t = (x - xs_[i]) / h;
  const double dh00 = 6 * t * (t - 1) / h;
  const double dh10 = (1 - 4 * t + 3 * t * t);
  const double dh01 = -dh00;
  const double dh11 = t * (3 * t - 2);
  return dh00 * ys_[i] + dh10 * slopes_[i] + dh01 * ys_[i + 1] + dh11 * slopes_[i + 1];
}

}  // namespace pflow::num

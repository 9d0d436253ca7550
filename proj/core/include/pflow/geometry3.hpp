#ifndef PFLOW_GEOMETRY3_HPP
#define PFLOW_GEOMETRY3_HPP

#include <array>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace pflow {

struct Vec3 {
  double x = 0, y = 0, z = 0;

  Vec3() = default;
  Vec3(double x_, double y_, double z_) : x(x_), y(y_), z(z_) {}

  Vec3 operator+(const Vec3& o) const { return {x + o.x, y + o.y, z + o.z}; }
  Vec3 operator-(const Vec3& o) const { return {x - o.x, y - o.y, z - o.z}; }
  Vec3 operator*(double c) const { return {c * x, c * y, c * z}; }
  Vec3 operator/(double c) const { return {x / c, y / c, z / c}; }
  double dot(const Vec3& o) const { return x * o.x + y * o.y + z * o.z; }
  double norm() const { return std::sqrt(dot(*this)); }
};

inline Vec3 operator*(double c, const Vec3& v) { return v * c; }

inline Vec3 cross(const Vec3& a, const Vec3& b) {
  return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}

// Symmetric 3x3 matrix stored as (xx, yy, zz, xy, xz, yz).
struct SymMat3 {
  std::array<double, 6> a{1, 1, 1, 0, 0, 0};

  static SymMat3 identity() { return {}; }
  static SymMat3 scaled_identity(double c) { return {{c, c, c, 0, 0, 0}}; }

  double xx() const { return a[0]; }
  double yy() const { return a[1]; }
  double zz() const { return a[2]; }
  double xy() const { return a[3]; }
  double xz() const { return a[4]; }
  double yz() const { return a[5]; }

  double quad(const Vec3& v) const {
    return a[0] * v.x * v.x + a[1] * v.y * v.y + a[2] * v.z * v.z +
           2 * (a[3] * v.x * v.y + a[4] * v.x * v.z + a[5] * v.y * v.z);
  }

  Vec3 mul(const Vec3& v) const {
    return {a[0] * v.x + a[3] * v.y + a[4] * v.z,
            a[3] * v.x + a[1] * v.y + a[5] * v.z,
            a[4] * v.x + a[5] * v.y + a[2] * v.z};
  }

  double det() const {
    return a[0] * (a[1] * a[2] - a[5] * a[5]) - a[3] * (a[3] * a[2] - a[5] * a[4]) +
           a[4] * (a[3] * a[5] - a[1] * a[4]);
  }

  double trace() const { return a[0] + a[1] + a[2]; }

  SymMat3 inverse() const {
    const double d = det();
    if (d == 0) throw std::runtime_error("SymMat3: singular matrix");
    SymMat3 r;
    r.a[0] = (a[1] * a[2] - a[5] * a[5]) / d;
    r.a[1] = (a[0] * a[2] - a[4] * a[4]) / d;
    r.a[2] = (a[0] * a[1] - a[3] * a[3]) / d;
    r.a[3] = (a[4] * a[5] - a[3] * a[2]) / d;
    r.a[4] = (a[3] * a[5] - a[4] * a[1]) / d;
    r.a[5] = (a[3] * a[4] - a[0] * a[5]) / d;
    return r;
  }

  SymMat3 operator+(const SymMat3& o) const {
    SymMat3 r;
    for (int i = 0; i < 6; ++i) r.a[i] = a[i] + o.a[i];
    return r;
  }
  SymMat3 operator*(double c) const {
    SymMat3 r;
    for (int i = 0; i < 6; ++i) r.a[i] = c * a[i];
    return r;
  }

  // Eigenvalues in increasing order, closed-form trigonometric method.
  std::array<double, 3> eigenvalues() const {
    const double q = trace() / 3.0;
    const double p1 = a[3] * a[3] + a[4] * a[4] + a[5] * a[5];
    const double p2 = (a[0] - q) * (a[0] - q) + (a[1] - q) * (a[1] - q) +
                      (a[2] - q) * (a[2] - q) + 2.0 * p1;
    if (p2 <= 1e-300) return {q, q, q};
    const double p = std::sqrt(p2 / 6.0);
    SymMat3 b;
    for (int i = 0; i < 3; ++i) b.a[i] = (a[i] - q) / p;
    for (int i = 3; i < 6; ++i) b.a[i] = a[i] / p;
    double r = b.det() / 2.0;
    r = std::max(-1.0, std::min(1.0, r));
    const double phi = std::acos(r) / 3.0;
    const double e1 = q + 2.0 * p * std::cos(phi);
    const double e3 = q + 2.0 * p * std::cos(phi + 2.0 * std::numbers::pi / 3.0);
    const double e2 = 3.0 * q - e1 - e3;
    return {e3, e2, e1};
  }

  bool positive_definite() const { return eigenvalues()[0] > 0; }
};

}  // namespace pflow

#endif

#ifndef PFLOW_GRID_METRIC_HPP
#define PFLOW_GRID_METRIC_HPP

#include <cstddef>
#include <functional>
#include <string>
#include <vector>

#include "pflow/geometry3.hpp"

namespace pflow::metrics {

// Uniform node lattice over an axis-aligned coordinate box.
// Nodes are indexed x-fastest: idx = i + nx*(j + ny*k).
struct Lattice {
  Vec3 origin;
  double h = 0.0;
  int nx = 0, ny = 0, nz = 0;

  static Lattice centered_cube(double side, int nodes_per_axis);

  std::size_t nodes() const {
    return static_cast<std::size_t>(nx) * ny * nz;
  }
  std::size_t cells() const {
    return static_cast<std::size_t>(nx - 1) * (ny - 1) * (nz - 1);
  }
  std::size_t index(int i, int j, int k) const {
    return static_cast<std::size_t>(i) + static_cast<std::size_t>(nx) * (j + static_cast<std::size_t>(ny) * k);
  }
  Vec3 position(int i, int j, int k) const {
    return {origin.x + h * i, origin.y + h * j, origin.z + h * k};
  }
  bool contains(int i, int j, int k) const {
    return i >= 0 && j >= 0 && k >= 0 && i < nx && j < ny && k < nz;
  }
};

// Lattice-sampled symmetric positive definite metric field with uniform
// ellipticity bounds relative to the flat chart metric.
class GridMetric {
 public:
  static GridMetric flat(const Lattice& lat, double scale = 1.0);
  // g = c(x) * delta with a positive conformal factor.
  static GridMetric conformal(const Lattice& lat,
                              const std::function<double(const Vec3&)>& factor);
  // Isotropic-chart metric (1 + m/(2|x - center|))^4 * delta.
  static GridMetric schwarzschild_isotropic(const Lattice& lat, double mass,
                                            const Vec3& center);
  static GridMetric from_field(const Lattice& lat, std::vector<SymMat3> field);

  // Flat little-endian float64 dump, 6 components per node (xx,yy,zz,xy,xz,yz),
  // x-fastest node order; and the matching CSV form (one node per line).
  static GridMetric load_binary(const Lattice& lat, const std::string& path);
  static GridMetric load_csv(const Lattice& lat, const std::string& path);
  void save_binary(const std::string& path) const;

  const Lattice& lattice() const { return lat_; }
  const SymMat3& at(std::size_t idx) const { return field_[idx]; }
  const SymMat3& at(int i, int j, int k) const { return field_[lat_.index(i, j, k)]; }
  const std::vector<SymMat3>& field() const { return field_; }

  // Uniform ellipticity bounds: lambda |v|^2 <= g(v,v) <= Lambda |v|^2.
  double lambda_min() const { return lambda_min_; }
  double lambda_max() const { return lambda_max_; }

 private:
  GridMetric(const Lattice& lat, std::vector<SymMat3> field);

  Lattice lat_;
  std::vector<SymMat3> field_;
  double lambda_min_ = 0.0;
  double lambda_max_ = 0.0;
};

// Scalar curvature at every node by centered finite differences of the
// Christoffel symbols. Nodes within two layers of the lattice boundary get
// NaN (no stencil).
std::vector<double> scalar_curvature_field(const GridMetric& g);

}  // namespace pflow::metrics

#endif

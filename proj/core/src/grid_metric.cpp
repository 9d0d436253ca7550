#include "pflow/grid_metric.hpp"

#include <bit>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "pflow/parallel.hpp"

namespace pflow::metrics {

Lattice Lattice::centered_cube(double side, int nodes_per_axis) {
  if (nodes_per_axis < 2 || !(side > 0))
    throw std::invalid_argument("Lattice: bad cube parameters");
  Lattice lat;
  lat.h = side / (nodes_per_axis - 1);
  lat.nx = lat.ny = lat.nz = nodes_per_axis;
  lat.origin = {-side / 2, -side / 2, -side / 2};
  return lat;
}

GridMetric::GridMetric(const Lattice& lat, std::vector<SymMat3> field)
    : lat_(lat), field_(std::move(field)) {
  if (field_.size() != lat_.nodes())
    throw std::invalid_argument("GridMetric: field size does not match lattice");
  double lo = std::numeric_limits<double>::infinity();
  double hi = 0.0;
  for (std::size_t idx = 0; idx < field_.size(); ++idx) {
    const auto ev = field_[idx].eigenvalues();
    if (!(ev[0] > 0))
      throw std::invalid_argument("GridMetric: sampled matrix at node " +
                                  std::to_string(idx) + " is not positive definite");
    lo = std::min(lo, ev[0]);
    hi = std::max(hi, ev[2]);
  }
  lambda_min_ = lo;
  lambda_max_ = hi;
}

GridMetric GridMetric::flat(const Lattice& lat, double scale) {
  if (!(scale > 0)) throw std::invalid_argument("GridMetric::flat: scale must be positive");
  return {lat, std::vector<SymMat3>(lat.nodes(), SymMat3::scaled_identity(scale))};
}

GridMetric GridMetric::conformal(const Lattice& lat,
                                 const std::function<double(const Vec3&)>& factor) {
  std::vector<SymMat3> field(lat.nodes());
  for (int k = 0; k < lat.nz; ++k)
    for (int j = 0; j < lat.ny; ++j)
      for (int i = 0; i < lat.nx; ++i) {
        const double c = factor(lat.position(i, j, k));
        if (!(c > 0))
          throw std::invalid_argument("GridMetric::conformal: factor must be positive");
        field[lat.index(i, j, k)] = SymMat3::scaled_identity(c);
      }
  return {lat, std::move(field)};
}

GridMetric GridMetric::schwarzschild_isotropic(const Lattice& lat, double mass,
                                               const Vec3& center) {
  if (!(mass > 0)) throw std::invalid_argument("schwarzschild_isotropic: mass must be positive");
  return conformal(lat, [mass, center](const Vec3& x) {
    const double r = (x - center).norm();
    if (r < mass / 16)
      throw std::invalid_argument("schwarzschild_isotropic: lattice node too close to the puncture");
    const double u = 1.0 + mass / (2 * r);
    return u * u * u * u;
  });
}

GridMetric GridMetric::from_field(const Lattice& lat, std::vector<SymMat3> field) {
  return {lat, std::move(field)};
}

GridMetric GridMetric::load_binary(const Lattice& lat, const std::string& path) {
  static_assert(std::endian::native == std::endian::little,
                "binary metric dumps are little-endian");
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("load_binary: cannot open " + path);
  std::vector<SymMat3> field(lat.nodes());
  for (auto& m : field) {
    in.read(reinterpret_cast<char*>(m.a.data()), 6 * sizeof(double));
    if (!in) throw std::runtime_error("load_binary: truncated file " + path);
  }
  return {lat, std::move(field)};
}

GridMetric GridMetric::load_csv(const Lattice& lat, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("load_csv: cannot open " + path);
  std::vector<SymMat3> field;
  field.reserve(lat.nodes());
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ss(line);
    SymMat3 m;
    char comma;
    for (int c = 0; c < 6; ++c) {
      if (!(ss >> m.a[c])) throw std::runtime_error("load_csv: malformed line: " + line);
      if (c < 5) ss >> comma;
    }
    field.push_back(m);
  }
  if (field.size() != lat.nodes())
    throw std::runtime_error("load_csv: expected " + std::to_string(lat.nodes()) +
                             " nodes, got " + std::to_string(field.size()));
  return {lat, std::move(field)};
}

void GridMetric::save_binary(const std::string& path) const {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("save_binary: cannot open " + path);
  for (const auto& m : field_)
    out.write(reinterpret_cast<const char*>(m.a.data()), 6 * sizeof(double));
}

namespace {

inline int sym_index(int i, int j) {
  if (i == j) return i;
  const int a = std::min(i, j), b = std::max(i, j);
  if (a == 0 && b == 1) return 3;
  if (a == 0 && b == 2) return 4;
  return 5;
}

}  // namespace

std::vector<double> scalar_curvature_field(const GridMetric& g) {
  const Lattice& lat = g.lattice();
  const double h = lat.h;
  const std::size_t n = lat.nodes();
  const double nan = std::numeric_limits<double>::quiet_NaN();

  // Pass 1: Christoffel symbols Gamma^k_{ij}, stored as gamma[idx][k*6+sym(i,j)].
  std::vector<std::array<double, 18>> gamma(n);
  const std::size_t sx = 1, sy = lat.nx, sz = static_cast<std::size_t>(lat.nx) * lat.ny;
  const std::size_t strides[3] = {sx, sy, sz};

  parallel_for(n, [&](std::size_t lo, std::size_t hi) {
    for (std::size_t idx = lo; idx < hi; ++idx) {
      const int i = static_cast<int>(idx % lat.nx);
      const int j = static_cast<int>((idx / lat.nx) % lat.ny);
      const int k = static_cast<int>(idx / (static_cast<std::size_t>(lat.nx) * lat.ny));
      if (i < 1 || j < 1 || k < 1 || i >= lat.nx - 1 || j >= lat.ny - 1 || k >= lat.nz - 1) {
        gamma[idx].fill(nan);
        continue;
      }
      // dg[d][c]: d/dx_d of metric component c
      double dg[3][6];
      for (int d = 0; d < 3; ++d) {
        const auto& plus = g.at(idx + strides[d]);
        const auto& minus = g.at(idx - strides[d]);
        for (int c = 0; c < 6; ++c) dg[d][c] = (plus.a[c] - minus.a[c]) / (2 * h);
      }
      const SymMat3 inv = g.at(idx).inverse();
      const double gi[3][3] = {{inv.a[0], inv.a[3], inv.a[4]},
                               {inv.a[3], inv.a[1], inv.a[5]},
                               {inv.a[4], inv.a[5], inv.a[2]}};
      for (int kk = 0; kk < 3; ++kk)
        for (int ii = 0; ii < 3; ++ii)
          for (int jj = ii; jj < 3; ++jj) {
            double sum = 0;
            for (int l = 0; l < 3; ++l) {
              sum += gi[kk][l] * (dg[ii][sym_index(jj, l)] + dg[jj][sym_index(ii, l)] -
                                  dg[l][sym_index(ii, jj)]);
            }
            gamma[idx][kk * 6 + sym_index(ii, jj)] = 0.5 * sum;
          }
    }
  });

  // Pass 2: Ric_ij = d_k G^k_ij - d_j G^k_ki + G^k_kl G^l_ij - G^k_jl G^l_ki.
  std::vector<double> out(n, nan);
  parallel_for(n, [&](std::size_t lo, std::size_t hi) {
    for (std::size_t idx = lo; idx < hi; ++idx) {
      const int i = static_cast<int>(idx % lat.nx);
      const int j = static_cast<int>((idx / lat.nx) % lat.ny);
      const int k = static_cast<int>(idx / (static_cast<std::size_t>(lat.nx) * lat.ny));
      if (i < 2 || j < 2 || k < 2 || i >= lat.nx - 2 || j >= lat.ny - 2 || k >= lat.nz - 2)
        continue;
      double dgamma[3][18];
      for (int d = 0; d < 3; ++d) {
        const auto& plus = gamma[idx + strides[d]];
        const auto& minus = gamma[idx - strides[d]];
        for (int c = 0; c < 18; ++c) dgamma[d][c] = (plus[c] - minus[c]) / (2 * h);
      }
      const auto& gm = gamma[idx];
      const SymMat3 inv = g.at(idx).inverse();
      const double gi[3][3] = {{inv.a[0], inv.a[3], inv.a[4]},
                               {inv.a[3], inv.a[1], inv.a[5]},
                               {inv.a[4], inv.a[5], inv.a[2]}};
      double r = 0;
      for (int ii = 0; ii < 3; ++ii)
        for (int jj = 0; jj < 3; ++jj) {
          double ric = 0;
          for (int kk = 0; kk < 3; ++kk) {
            ric += dgamma[kk][kk * 6 + sym_index(ii, jj)];
            ric -= dgamma[jj][kk * 6 + sym_index(kk, ii)];
            for (int l = 0; l < 3; ++l) {
              ric += gm[kk * 6 + sym_index(kk, l)] * gm[l * 6 + sym_index(ii, jj)];
              ric -= gm[kk * 6 + sym_index(jj, l)] * gm[l * 6 + sym_index(kk, ii)];
            }
          }
          r += gi[ii][jj] * ric;
        }
      out[idx] = r;
    }
  });
  return out;
}

}  // namespace pflow::metrics

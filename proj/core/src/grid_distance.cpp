#include "pflow/grid_distance.hpp"

#include <cmath>
#include <queue>
#include <stdexcept>

namespace pflow::metrics {

DistanceField grid_distance(const GridMetric& g, int si, int sj, int sk,
                            const std::function<bool(std::size_t)>& passable) {
  const Lattice& lat = g.lattice();
  if (!lat.contains(si, sj, sk))
    throw std::invalid_argument("grid_distance: source outside lattice");

  struct Offset {
    int di, dj, dk;
    Vec3 unit;
    double len;
  };
  std::vector<Offset> offsets;
  for (int dk = -1; dk <= 1; ++dk)
    for (int dj = -1; dj <= 1; ++dj)
      for (int di = -1; di <= 1; ++di) {
        if (di == 0 && dj == 0 && dk == 0) continue;
        const double len = lat.h * std::sqrt(double(di * di + dj * dj + dk * dk));
        Vec3 u{double(di), double(dj), double(dk)};
        u = u / u.norm();
        offsets.push_back({di, dj, dk, u, len});
      }

  const double inf = std::numeric_limits<double>::infinity();
  std::vector<double> dist(lat.nodes(), inf);
  using Item = std::pair<double, std::size_t>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;

  const std::size_t src = lat.index(si, sj, sk);
  if (passable && !passable(src))
    throw std::invalid_argument("grid_distance: source not passable");
  dist[src] = 0.0;
  heap.push({0.0, src});

  while (!heap.empty()) {
    const auto [d, idx] = heap.top();
    heap.pop();
    if (d > dist[idx]) continue;
    const int i = static_cast<int>(idx % lat.nx);
    const int j = static_cast<int>((idx / lat.nx) % lat.ny);
    const int k = static_cast<int>(idx / (static_cast<std::size_t>(lat.nx) * lat.ny));
    const SymMat3& ga = g.at(idx);
    for (const auto& o : offsets) {
      const int ni = i + o.di, nj = j + o.dj, nk = k + o.dk;
      if (!lat.contains(ni, nj, nk)) continue;
      const std::size_t nidx = lat.index(ni, nj, nk);
      if (passable && !passable(nidx)) continue;
      const SymMat3& gb = g.at(nidx);
      const double qa = ga.quad(o.unit);
      const double qb = gb.quad(o.unit);
      const double qm = 0.5 * (qa + qb);
      const double w = o.len * (std::sqrt(qa) + 4.0 * std::sqrt(qm) + std::sqrt(qb)) / 6.0;
      if (dist[idx] + w < dist[nidx]) {
        dist[nidx] = dist[idx] + w;
        heap.push({dist[nidx], nidx});
      }
    }
  }
  return {lat, std::move(dist)};
}

}  // namespace pflow::metrics

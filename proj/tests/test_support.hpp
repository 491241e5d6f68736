#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <tuple>
#include <utility>
#include <vector>

#include "dmbst/geometry.hpp"
#include "dmbst/rng.hpp"

namespace testsup {

/// n distinct points uniform in [0, span]^3.
inline dmbst::PointSet random_instance(dmbst::Rng& rng, int n,
                                       dmbst::Metric m, double span = 1.0) {
  std::vector<dmbst::Point3> pts;
  std::set<std::tuple<double, double, double>> seen;
  while (static_cast<int>(pts.size()) < n) {
    dmbst::Point3 p{span * rng.uniform01(), span * rng.uniform01(),
                    span * rng.uniform01()};
    if (seen.insert({p.x, p.y, p.z}).second) pts.push_back(p);
  }
  return dmbst::PointSet(std::move(pts), m);
}

/// Bottleneck of the best start-anchored path through visit, by trying all
/// permutations. The (start, first) edge counts.
inline double btsp_by_permutation(const dmbst::PointSet& ps, int start,
                                  std::vector<int> visit) {
  std::sort(visit.begin(), visit.end());
  double best = std::numeric_limits<double>::infinity();
  do {
    double value = ps.dist(start, visit.front());
    for (std::size_t i = 1; i < visit.size(); ++i)
      value = std::max(value, ps.dist(visit[i - 1], visit[i]));
    best = std::min(best, value);
  } while (std::next_permutation(visit.begin(), visit.end()));
  return best;
}

/// Lexicographically smallest optimal order for the same objective.
inline std::vector<int> btsp_order_by_permutation(const dmbst::PointSet& ps,
                                                  int start,
                                                  std::vector<int> visit) {
  std::sort(visit.begin(), visit.end());
  const double best = btsp_by_permutation(ps, start, visit);
  do {
    double value = ps.dist(start, visit.front());
    for (std::size_t i = 1; i < visit.size(); ++i)
      value = std::max(value, ps.dist(visit[i - 1], visit[i]));
    if (value <= best + 1e-15) return visit;
  } while (std::next_permutation(visit.begin(), visit.end()));
  return visit;
}

/// Whether p (a member of pts) lies on the boundary of the convex hull of
/// pts, within tol. Tries every plane spanned by p and two other points
/// (covering vertices, edge points, and face points); an all-collinear set
/// is its own boundary.
inline bool on_hull_boundary(const dmbst::Point3& p,
                             const std::vector<dmbst::Point3>& pts,
                             double tol = 1e-9) {
  std::vector<dmbst::Point3> rel;
  for (const auto& q : pts) rel.push_back({q.x - p.x, q.y - p.y, q.z - p.z});
  bool any_pair = false;
  for (std::size_t a = 0; a < rel.size(); ++a) {
    for (std::size_t b = a + 1; b < rel.size(); ++b) {
      const dmbst::Point3 u = rel[a], v = rel[b];
      dmbst::Point3 n{u.y * v.z - u.z * v.y, u.z * v.x - u.x * v.z,
                      u.x * v.y - u.y * v.x};
      const double len =
          std::sqrt(n.x * n.x + n.y * n.y + n.z * n.z);
      if (len < 1e-12) continue;
      any_pair = true;
      n = {n.x / len, n.y / len, n.z / len};
      double hi = 0.0, lo = 0.0;
      for (const auto& q : rel) {
        const double s = n.x * q.x + n.y * q.y + n.z * q.z;
        hi = std::max(hi, s);
        lo = std::min(lo, s);
      }
      if (hi <= tol || -lo <= tol) return true;
    }
  }
  return !any_pair;
}

/// All fixed polyominoes (cell sets up to translation) of the given size,
/// each returned as a sorted vertex list with min x = min y = 0.
inline std::vector<std::vector<std::pair<int, int>>> polyominoes(int size) {
  using Cells = std::vector<std::pair<int, int>>;
  auto canonical = [](Cells cells) {
    int mx = cells[0].first, my = cells[0].second;
    for (const auto& [x, y] : cells) {
      mx = std::min(mx, x);
      my = std::min(my, y);
    }
    for (auto& [x, y] : cells) {
      x -= mx;
      y -= my;
    }
    std::sort(cells.begin(), cells.end());
    return cells;
  };
  std::set<Cells> layer{canonical({{0, 0}})};
  for (int s = 2; s <= size; ++s) {
    std::set<Cells> next;
    for (const Cells& cells : layer) {
      std::set<std::pair<int, int>> occupied(cells.begin(), cells.end());
      for (const auto& [x, y] : cells) {
        const std::pair<int, int> nbrs[4] = {
            {x + 1, y}, {x - 1, y}, {x, y + 1}, {x, y - 1}};
        for (const auto& nb : nbrs) {
          if (occupied.count(nb)) continue;
          Cells grown = cells;
          grown.push_back(nb);
          next.insert(canonical(std::move(grown)));
        }
      }
    }
    layer = std::move(next);
  }
  return {layer.begin(), layer.end()};
}

/// Random connected grid-graph vertex set with max degree <= 3.
inline std::vector<std::pair<int, int>> random_degree3_grid(dmbst::Rng& rng,
                                                            int size) {
  while (true) {
    std::set<std::pair<int, int>> cells{{0, 0}};
    auto degree = [&](const std::pair<int, int>& c) {
      int d = 0;
      const std::pair<int, int> nbrs[4] = {{c.first + 1, c.second},
                                           {c.first - 1, c.second},
                                           {c.first, c.second + 1},
                                           {c.first, c.second - 1}};
      for (const auto& nb : nbrs) d += cells.count(nb) ? 1 : 0;
      return d;
    };
    int stuck = 0;
    while (static_cast<int>(cells.size()) < size && stuck < 200) {
      std::vector<std::pair<int, int>> pool(cells.begin(), cells.end());
      const auto& base = pool[rng.below(pool.size())];
      const std::pair<int, int> nbrs[4] = {{base.first + 1, base.second},
                                           {base.first - 1, base.second},
                                           {base.first, base.second + 1},
                                           {base.first, base.second - 1}};
      const auto& cand = nbrs[rng.below(4)];
      if (cells.count(cand)) {
        ++stuck;
        continue;
      }
      cells.insert(cand);
      bool ok = true;
      for (const auto& c : cells) ok = ok && degree(c) <= 3;
      if (!ok) {
        cells.erase(cand);
        ++stuck;
      }
    }
    if (static_cast<int>(cells.size()) == size)
      return {cells.begin(), cells.end()};
  }
}

}  // namespace testsup

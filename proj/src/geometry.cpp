#include "dmbst/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace dmbst {

const char* metric_name(Metric m) {
  return m == Metric::euclidean ? "euclidean" : "rectilinear";
}

Metric metric_from_name(const std::string& name) {
  if (name == "euclidean") return Metric::euclidean;
  if (name == "rectilinear") return Metric::rectilinear;
  throw ValidationError("unknown metric '" + name + "' (expected euclidean or rectilinear)");
}

double distance(const Point3& a, const Point3& b, Metric m) {
  const double dx = a.x - b.x, dy = a.y - b.y, dz = a.z - b.z;
  if (m == Metric::euclidean) return std::sqrt(dx * dx + dy * dy + dz * dz);
  return std::abs(dx) + std::abs(dy) + std::abs(dz);
}

double angle_at_deg(const Point3& vertex, const Point3& a, const Point3& b) {
  const double ux = a.x - vertex.x, uy = a.y - vertex.y, uz = a.z - vertex.z;
  const double wx = b.x - vertex.x, wy = b.y - vertex.y, wz = b.z - vertex.z;
  const double nu = std::sqrt(ux * ux + uy * uy + uz * uz);
  const double nw = std::sqrt(wx * wx + wy * wy + wz * wz);
  if (nu == 0.0 || nw == 0.0)
    throw ValidationError("angle_at_deg: degenerate ray (endpoint equals vertex)");
  const double cx = uy * wz - uz * wy;
  const double cy = uz * wx - ux * wz;
  const double cz = ux * wy - uy * wx;
  const double cross = std::sqrt(cx * cx + cy * cy + cz * cz);
  const double dot = ux * wx + uy * wy + uz * wz;
  return std::atan2(cross, dot) * 180.0 / M_PI;
}

PointSet::PointSet(std::vector<Point3> pts, Metric m) : points(std::move(pts)), metric(m) {
  validate();
}

void PointSet::validate() const {
  if (points.empty()) throw ValidationError("point set must contain at least one point");
  for (const auto& p : points) {
    if (!std::isfinite(p.x) || !std::isfinite(p.y) || !std::isfinite(p.z))
      throw ValidationError("point set contains a non-finite coordinate");
  }
  std::vector<int> idx(points.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::sort(idx.begin(), idx.end(), [&](int a, int b) {
    const Point3 &p = points[a], &q = points[b];
    if (p.x != q.x) return p.x < q.x;
    if (p.y != q.y) return p.y < q.y;
    return p.z < q.z;
  });
  for (size_t i = 1; i < idx.size(); ++i) {
    if (points[idx[i - 1]] == points[idx[i]])
      throw ValidationError("point set contains duplicate points (indices " +
                            std::to_string(idx[i - 1]) + " and " + std::to_string(idx[i]) + ")");
  }
}

DistanceTable::DistanceTable(const PointSet& ps) : n_(ps.size()) {
  if (n_ > max_points)
    throw CapExceeded("distance table supports at most " + std::to_string(max_points) +
                      " points, got " + std::to_string(n_));
  d_.resize(static_cast<size_t>(n_) * n_, 0.0);
  for (int i = 0; i < n_; ++i)
    for (int j = i + 1; j < n_; ++j) {
      const double v = ps.dist(i, j);
      d_[static_cast<size_t>(i) * n_ + j] = v;
      d_[static_cast<size_t>(j) * n_ + i] = v;
    }
}

}  // namespace dmbst

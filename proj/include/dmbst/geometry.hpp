#pragma once

#include <cstddef>
#include <vector>

#include "dmbst/errors.hpp"

namespace dmbst {

enum class Metric { euclidean, rectilinear };

const char* metric_name(Metric m);
Metric metric_from_name(const std::string& name);

struct Point3 {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  friend bool operator==(const Point3& a, const Point3& b) {
    return a.x == b.x && a.y == b.y && a.z == b.z;
  }
};

/// Distance under the given metric (L2 or L1).
double distance(const Point3& a, const Point3& b, Metric m);

/// Angle at `vertex` between rays to `a` and `b`, in degrees. Always Euclidean.
/// Throws ValidationError if either ray is degenerate (a == vertex or b == vertex).
double angle_at_deg(const Point3& vertex, const Point3& a, const Point3& b);

/// A finite set of distinct points tagged with the active metric.
struct PointSet {
  std::vector<Point3> points;
  Metric metric = Metric::euclidean;

  PointSet() = default;
  PointSet(std::vector<Point3> pts, Metric m);

  int size() const { return static_cast<int>(points.size()); }
  double dist(int i, int j) const { return distance(points[i], points[j], metric); }

  /// Throws ValidationError on empty set, non-finite coordinates, or duplicates.
  void validate() const;
};

/// Dense precomputed n x n distance table. Hard cap n <= 4096.
class DistanceTable {
 public:
  explicit DistanceTable(const PointSet& ps);

  int size() const { return n_; }
  double operator()(int i, int j) const { return d_[static_cast<size_t>(i) * n_ + j]; }

  static constexpr int max_points = 4096;

 private:
  int n_ = 0;
  std::vector<double> d_;
};

}  // namespace dmbst

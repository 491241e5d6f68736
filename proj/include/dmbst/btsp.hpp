#pragma once

#include <vector>

#include "dmbst/geometry.hpp"

namespace dmbst {

/// Path through a vertex set anchored at a fixed start vertex. `order`
/// begins with the start vertex; `bottleneck_value` is the longest
/// consecutive-pair distance along it.
struct BottleneckPath {
  std::vector<int> order;
  double bottleneck_value = 0.0;
};

/// Exact minimum-bottleneck path from `start` through all of `visit`.
/// The (start, first) edge counts toward the bottleneck. Among optimal
/// orders the lexicographically smallest one is returned. Bitmask dynamic
/// program over (subset, last) states, O(2^k k^2); |visit| is capped at 20.
BottleneckPath btsp_path(const PointSet& ps, int start, std::vector<int> visit);

/// Orders `children` so that the largest child-to-child link along the
/// sequence is minimized. The (v, first) edge is ignored by this objective,
/// which is what distinguishes it from btsp_path. Ties are broken toward the
/// lexicographically smallest ordering.
std::vector<int> btsp_order_children(const PointSet& ps, int v,
                                     std::vector<int> children);

/// Bottleneck of the optimal start-anchored path through every subset of
/// `visit` at once. Entry m covers the subset of positions named by the bits
/// of m, where positions index the ascending-sorted visit list; entry 0 is 0.
/// Computed in one DP pass, so scanning many subsets costs a lookup each.
std::vector<double> btsp_subset_table(const PointSet& ps, int start,
                                      std::vector<int> visit);

}  // namespace dmbst

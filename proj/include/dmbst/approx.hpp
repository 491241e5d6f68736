#pragma once

#include <functional>
#include <utility>
#include <vector>

#include "dmbst/geometry.hpp"
#include "dmbst/spanning.hpp"

namespace dmbst {

/// Edges committed when one star was rewired: the star's root and the edges
/// that took the place of its root-child fan.
struct SwapEntry {
  int root = 0;
  std::vector<std::pair<int, int>> added_edges;
};

struct ApproxResult {
  Tree tree;
  double bottleneck_value = 0.0;
  double ratio_vs_mst = 1.0;
  std::vector<SwapEntry> swap_log;
};

/// Degree-bounded rewiring of the MST. Stars are processed in preorder; a
/// node with c >= delta-1 children keeps only the edge to the first child of
/// the bottleneck-optimal child ordering and chains the children instead.
/// The default child ordering minimizes child-to-child links only; setting
/// order_includes_root_edge makes it count the (v, first) edge too, which is
/// useful for experiments but can change results on stars whose optimum is
/// not forced. Output max degree is at most delta. Requires delta >= 3.
ApproxResult nkry(const PointSet& ps, int delta, int root = 0,
                  bool order_includes_root_edge = false);

/// Partition variant of the rewiring. A triggering star's children are split
/// into exactly k blocks; every partition is scanned and the one with the
/// smallest max-block bottleneck wins, ties going to the canonically first
/// partition. Each block is then replaced by its bottleneck-optimal path
/// from the root, whose (root, first) edge counts toward the objective.
/// Requires delta >= 3 and 1 <= k <= delta-2. Scans refuse to enumerate more
/// than 10^7 partitions at one star.
ApproxResult pkry(const PointSet& ps, int delta, int k, int root = 0);

/// Calls visit once per partition of `items` into exactly k nonempty blocks,
/// in canonical order (blocks sorted by smallest element). The number of
/// calls is stirling2(|items|, k).
void partitions_into_k(
    const std::vector<int>& items, int k,
    const std::function<void(const std::vector<std::vector<int>>&)>& visit);

}  // namespace dmbst

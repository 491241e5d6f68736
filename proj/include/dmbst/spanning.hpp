#pragma once

#include <utility>
#include <vector>

#include "dmbst/geometry.hpp"

namespace dmbst {

/// Rooted spanning tree over point indices. parent[root] == -1;
/// edge_length[v] is the length of (parent[v], v) and 0 at the root.
struct Tree {
  int root = 0;
  std::vector<int> parent;
  std::vector<double> edge_length;

  int size() const { return static_cast<int>(parent.size()); }

  /// Throws ValidationError unless parent pointers form a single tree rooted
  /// at `root` (every node reaches the root, no cycles).
  void validate() const;
};

/// Star of an internal node: its children in increasing index order.
struct Star {
  int center = 0;
  std::vector<int> children;
};

/// Prim O(n^2) minimum spanning tree rooted at index 0. Equal-length
/// candidates are broken toward the lexicographically smaller
/// (min index, max index) endpoint pair, so the output is deterministic.
/// Pass a precomputed DistanceTable to skip per-edge metric evaluation.
Tree mst(const PointSet& ps, const DistanceTable* table = nullptr);

/// Degree of the highest-degree node (children + parent edge). 0 for n == 1.
int max_degree(const Tree& t);

/// Longest edge. Throws ValidationError when the tree has no edges.
double bottleneck(const Tree& t);

/// Same edge set re-rooted at new_root (parent pointers reversed along the
/// root path; lengths preserved).
Tree reroot(const Tree& t, int new_root);

/// One Star per node with at least one child, ordered by center index.
std::vector<Star> stars_of(const Tree& t);

/// Materializes an undirected edge list (which must form a spanning tree of
/// ps) as a Tree rooted at `root`, with lengths from the active metric.
/// Throws ValidationError if the edges do not span.
Tree tree_from_edge_list(const PointSet& ps,
                         const std::vector<std::pair<int, int>>& edges,
                         int root);

}  // namespace dmbst

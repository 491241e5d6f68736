#pragma once

#include <functional>
#include <vector>

#include "dmbst/geometry.hpp"
#include "dmbst/grid_graph.hpp"
#include "dmbst/spanning.hpp"

namespace dmbst {

struct ExactResult {
  double bottleneck_value = 0.0;
  Tree witness_tree;
  long long node_count_explored = 0;
};

/// Exact minimum-bottleneck spanning tree under a max-degree bound: binary
/// search over the sorted pairwise distances, deciding each candidate
/// bottleneck by backtracking over the threshold graph (Hamiltonian-path
/// bitmask DP when delta == 2). Exponential in the worst case, so n is
/// capped at 14. Requires n >= 2 and delta >= 2.
ExactResult exact_dmbst(const PointSet& ps, int delta);

struct FeasibleTree {
  bool feasible = false;
  Tree witness;
  long long nodes_explored = 0;
};

/// Decides whether a spanning tree with max degree <= delta exists using
/// only edges of length <= max_edge, returning one if so. No bottleneck
/// search is involved, so the cap is looser (n <= 20); intended for sparse
/// threshold graphs such as reduction instances at bottleneck 1.
FeasibleTree feasible_bounded_tree(const PointSet& ps, int delta,
                                   double max_edge);

/// Streams all n^(n-2) labeled spanning trees, decoded from Pruefer
/// sequences in lexicographic order; n <= 9.
void enumerate_spanning_trees(const PointSet& ps,
                              const std::function<void(const Tree&)>& visit);

struct HamPathResult {
  bool exists = false;
  std::vector<int> path;
};

/// Exact Hamiltonian-path decision on a grid graph of <= 12 vertices, with
/// the lexicographically smallest witness path when one exists.
HamPathResult hamiltonian_path_exists(const GridGraph& g);

}  // namespace dmbst

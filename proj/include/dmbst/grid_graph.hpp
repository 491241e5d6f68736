#pragma once

#include <utility>
#include <vector>

namespace dmbst {

/// Vertex-induced subgraph of the integer lattice: vertices are distinct
/// (x, y) cells and the edges are exactly the unit-distance pairs. Vertices
/// are stored sorted by (x, y) so indices are canonical. Loading validates
/// distinctness and connectivity; the degree-3 bound the reduction needs is
/// enforced at gadget-build time, not here, so Hamiltonian-path queries can
/// still run on degree-4 graphs.
class GridGraph {
 public:
  explicit GridGraph(std::vector<std::pair<int, int>> vertices);

  int size() const { return static_cast<int>(vertices_.size()); }
  const std::vector<std::pair<int, int>>& vertices() const {
    return vertices_;
  }

  /// Even (x+y) parity is black, odd is white; every grid edge joins the two
  /// colors.
  bool is_black(int i) const;
  int black_count() const;

  const std::vector<int>& neighbors(int i) const { return adjacency_[i]; }
  int degree(int i) const { return static_cast<int>(adjacency_[i].size()); }
  int max_degree() const;

  /// All edges as (i, j) index pairs with i < j, sorted.
  std::vector<std::pair<int, int>> edges() const;

 private:
  std::vector<std::pair<int, int>> vertices_;
  std::vector<std::vector<int>> adjacency_;
};

}  // namespace dmbst

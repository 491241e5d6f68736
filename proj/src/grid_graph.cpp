#include "dmbst/grid_graph.hpp"

#include <algorithm>
#include <map>
#include <string>

#include "dmbst/errors.hpp"

namespace dmbst {

GridGraph::GridGraph(std::vector<std::pair<int, int>> vertices)
    : vertices_(std::move(vertices)) {
  if (vertices_.empty()) throw ValidationError("grid graph has no vertices");
  std::sort(vertices_.begin(), vertices_.end());
  if (std::adjacent_find(vertices_.begin(), vertices_.end()) !=
      vertices_.end())
    throw ValidationError("grid graph has duplicate vertices");

  std::map<std::pair<int, int>, int> index;
  for (int i = 0; i < size(); ++i) index[vertices_[i]] = i;
  adjacency_.assign(size(), {});
  for (int i = 0; i < size(); ++i) {
    const auto [x, y] = vertices_[i];
    for (const auto& [dx, dy] :
         {std::pair{1, 0}, std::pair{-1, 0}, std::pair{0, 1},
          std::pair{0, -1}}) {
      const auto it = index.find({x + dx, y + dy});
      if (it != index.end()) adjacency_[i].push_back(it->second);
    }
    std::sort(adjacency_[i].begin(), adjacency_[i].end());
  }

  std::vector<char> seen(size(), 0);
  std::vector<int> stack{0};
  seen[0] = 1;
  int reached = 1;
  while (!stack.empty()) {
    const int v = stack.back();
    stack.pop_back();
    for (int u : adjacency_[v]) {
      if (seen[u]) continue;
      seen[u] = 1;
      ++reached;
      stack.push_back(u);
    }
  }
  if (reached != size())
    throw ValidationError("grid graph is not connected (" +
                          std::to_string(reached) + " of " +
                          std::to_string(size()) + " vertices reachable)");
}

bool GridGraph::is_black(int i) const {
  const auto [x, y] = vertices_[i];
  return ((x + y) % 2 + 2) % 2 == 0;
}

int GridGraph::black_count() const {
  int count = 0;
  for (int i = 0; i < size(); ++i)
    if (is_black(i)) ++count;
  return count;
}

int GridGraph::max_degree() const {
  int out = 0;
  for (const auto& adj : adjacency_)
    out = std::max(out, static_cast<int>(adj.size()));
  return out;
}

std::vector<std::pair<int, int>> GridGraph::edges() const {
  std::vector<std::pair<int, int>> out;
  for (int i = 0; i < size(); ++i)
    for (int j : adjacency_[i])
      if (i < j) out.emplace_back(i, j);
  return out;
}

}  // namespace dmbst

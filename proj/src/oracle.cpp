#include "dmbst/oracle.hpp"

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <string>
#include <utility>

#include "dmbst/errors.hpp"

namespace dmbst {
namespace {

/// Union-find with union by size and an undo log instead of path
/// compression, so the backtracker can roll back cheaply.
class Dsu {
 public:
  explicit Dsu(int n) : parent_(n), size_(n, 1) {
    std::iota(parent_.begin(), parent_.end(), 0);
  }
  int find(int v) const {
    while (parent_[v] != v) v = parent_[v];
    return v;
  }
  bool unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    if (size_[a] < size_[b]) std::swap(a, b);
    parent_[b] = a;
    size_[a] += size_[b];
    log_.push_back(b);
    return true;
  }
  void rollback() {
    const int b = log_.back();
    log_.pop_back();
    size_[parent_[b]] -= size_[b];
    parent_[b] = b;
  }

 private:
  std::vector<int> parent_, size_;
  std::vector<int> log_;
};

/// Include/exclude backtracking for a spanning tree with max degree <= delta
/// over a fixed edge list. Edges are tried most-constrained-first (endpoints
/// of low candidate degree), and branches die when the still-usable suffix
/// edges cannot reconnect the current forest.
struct TreeSearch {
  int n;
  int delta;
  std::vector<std::pair<int, int>> edges;
  std::vector<int> deg;
  Dsu dsu;
  std::vector<char> take;
  long long explored = 0;
  std::vector<int> scratch_parent;

  TreeSearch(int n_, int delta_, std::vector<std::pair<int, int>> edges_)
      : n(n_), delta(delta_), edges(std::move(edges_)), deg(n_, 0), dsu(n_),
        take(edges.size(), 0), scratch_parent(n_) {}

  int scratch_find(int v) {
    while (scratch_parent[v] != v) v = scratch_parent[v];
    return v;
  }

  bool suffix_connects(int idx) {
    for (int v = 0; v < n; ++v) scratch_parent[v] = dsu.find(v);
    int components = 0;
    for (int v = 0; v < n; ++v)
      if (scratch_parent[v] == v) ++components;
    for (std::size_t i = idx; i < edges.size() && components > 1; ++i) {
      const auto [u, v] = edges[i];
      // An endpoint already at the degree bound can never take this edge.
      if (deg[u] >= delta || deg[v] >= delta) continue;
      const int ru = scratch_find(u);
      const int rv = scratch_find(v);
      if (ru != rv) {
        scratch_parent[ru] = rv;
        --components;
      }
    }
    return components == 1;
  }

  bool solve(int idx, int chosen) {
    ++explored;
    if (chosen == n - 1) return true;
    if (static_cast<int>(edges.size()) - idx < n - 1 - chosen) return false;
    if (!suffix_connects(idx)) return false;
    const auto [u, v] = edges[idx];
    if (deg[u] < delta && deg[v] < delta && dsu.unite(u, v)) {
      ++deg[u];
      ++deg[v];
      take[idx] = 1;
      if (solve(idx + 1, chosen + 1)) return true;
      take[idx] = 0;
      --deg[u];
      --deg[v];
      dsu.rollback();
    }
    return solve(idx + 1, chosen);
  }
};

std::vector<std::pair<int, int>> order_most_constrained(
    int n, std::vector<std::pair<int, int>> edges) {
  std::vector<int> thdeg(n, 0);
  for (const auto& [u, v] : edges) {
    ++thdeg[u];
    ++thdeg[v];
  }
  std::sort(edges.begin(), edges.end(), [&](const auto& a, const auto& b) {
    const int a_lo = std::min(thdeg[a.first], thdeg[a.second]);
    const int b_lo = std::min(thdeg[b.first], thdeg[b.second]);
    if (a_lo != b_lo) return a_lo < b_lo;
    const int a_hi = std::max(thdeg[a.first], thdeg[a.second]);
    const int b_hi = std::max(thdeg[b.first], thdeg[b.second]);
    if (a_hi != b_hi) return a_hi < b_hi;
    return a < b;
  });
  return edges;
}

bool threshold_connected(int n, const std::vector<std::pair<int, int>>& edges) {
  Dsu dsu(n);
  int components = n;
  for (const auto& [u, v] : edges)
    if (dsu.unite(u, v)) --components;
  return components == 1;
}

/// Lexicographically smallest Hamiltonian path over bitmask adjacency, via
/// the completion-feasibility table h[mask][v].
HamPathResult ham_path_bitmask(const std::vector<std::uint32_t>& adj) {
  const int n = static_cast<int>(adj.size());
  HamPathResult out;
  if (n == 1) {
    out.exists = true;
    out.path = {0};
    return out;
  }
  const int full = (1 << n) - 1;
  std::vector<char> h(static_cast<std::size_t>(full + 1) * n, 0);
  for (int v = 0; v < n; ++v)
    h[static_cast<std::size_t>(full) * n + v] = 1;
  for (int mask = full - 1; mask >= 1; --mask) {
    for (int v = 0; v < n; ++v) {
      if (!(mask & (1 << v))) continue;
      std::uint32_t options = adj[v] & ~static_cast<std::uint32_t>(mask);
      while (options) {
        const int u = std::countr_zero(options);
        options &= options - 1;
        if (h[(static_cast<std::size_t>(mask) | (1u << u)) * n + u]) {
          h[static_cast<std::size_t>(mask) * n + v] = 1;
          break;
        }
      }
    }
  }
  int start = -1;
  for (int v = 0; v < n && start < 0; ++v)
    if (h[(static_cast<std::size_t>(1) << v) * n + v]) start = v;
  if (start < 0) return out;
  out.exists = true;
  out.path.push_back(start);
  int mask = 1 << start;
  int at = start;
  while (mask != full) {
    for (int u = 0; u < n; ++u) {
      if ((mask & (1 << u)) || !(adj[at] & (1u << u))) continue;
      if (h[(static_cast<std::size_t>(mask) | (1u << u)) * n + u]) {
        out.path.push_back(u);
        mask |= 1 << u;
        at = u;
        break;
      }
    }
  }
  return out;
}

std::vector<std::pair<int, int>> path_to_edges(const std::vector<int>& path) {
  std::vector<std::pair<int, int>> out;
  for (std::size_t i = 1; i < path.size(); ++i)
    out.emplace_back(path[i - 1], path[i]);
  return out;
}

}  // namespace

ExactResult exact_dmbst(const PointSet& ps, int delta) {
  const int n = ps.size();
  if (n < 2) throw ValidationError("exact solver needs at least 2 points");
  if (n > 14)
    throw CapExceeded(
        "exact solver is capped at 14 points (threshold-graph backtracking "
        "is exponential), got " +
        std::to_string(n));
  if (delta < 2)
    throw ValidationError("degree bound must be at least 2, got " +
                          std::to_string(delta));

  std::vector<double> cuts;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) cuts.push_back(ps.dist(i, j));
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

  long long explored = 0;
  Tree witness;
  auto feasible = [&](double bound, bool want_witness) -> bool {
    std::vector<std::pair<int, int>> edges;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j)
        if (ps.dist(i, j) <= bound) edges.emplace_back(i, j);
    if (!threshold_connected(n, edges)) return false;
    if (delta == 2) {
      std::vector<std::uint32_t> adj(n, 0);
      for (const auto& [u, v] : edges) {
        adj[u] |= 1u << v;
        adj[v] |= 1u << u;
      }
      explored += static_cast<long long>(1) << n;
      const auto hp = ham_path_bitmask(adj);
      if (hp.exists && want_witness)
        witness = tree_from_edge_list(ps, path_to_edges(hp.path), 0);
      return hp.exists;
    }
    TreeSearch search(n, delta, order_most_constrained(n, std::move(edges)));
    const bool ok = search.solve(0, 0);
    explored += search.explored;
    if (ok && want_witness) {
      std::vector<std::pair<int, int>> chosen;
      for (std::size_t i = 0; i < search.edges.size(); ++i)
        if (search.take[i]) chosen.push_back(search.edges[i]);
      witness = tree_from_edge_list(ps, chosen, 0);
    }
    return ok;
  };

  int lo = 0;
  int hi = static_cast<int>(cuts.size()) - 1;
  while (lo < hi) {
    const int mid = lo + (hi - lo) / 2;
    if (feasible(cuts[mid], false))
      hi = mid;
    else
      lo = mid + 1;
  }
  feasible(cuts[lo], true);

  ExactResult out;
  out.bottleneck_value = cuts[lo];
  out.witness_tree = std::move(witness);
  out.node_count_explored = explored;
  return out;
}

FeasibleTree feasible_bounded_tree(const PointSet& ps, int delta,
                                   double max_edge) {
  const int n = ps.size();
  if (n > 20)
    throw CapExceeded("bounded-tree feasibility is capped at 20 points, got " +
                      std::to_string(n));
  if (delta < 1)
    throw ValidationError("degree bound must be at least 1, got " +
                          std::to_string(delta));
  FeasibleTree out;
  if (n == 1) {
    out.feasible = true;
    out.witness.root = 0;
    out.witness.parent = {-1};
    out.witness.edge_length = {0.0};
    return out;
  }
  std::vector<std::pair<int, int>> edges;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (ps.dist(i, j) <= max_edge) edges.emplace_back(i, j);
  if (!threshold_connected(n, edges)) return out;
  TreeSearch search(n, delta, order_most_constrained(n, std::move(edges)));
  out.feasible = search.solve(0, 0);
  out.nodes_explored = search.explored;
  if (out.feasible) {
    std::vector<std::pair<int, int>> chosen;
    for (std::size_t i = 0; i < search.edges.size(); ++i)
      if (search.take[i]) chosen.push_back(search.edges[i]);
    out.witness = tree_from_edge_list(ps, chosen, 0);
  }
  return out;
}

void enumerate_spanning_trees(const PointSet& ps,
                              const std::function<void(const Tree&)>& visit) {
  const int n = ps.size();
  if (n > 9)
    throw CapExceeded(
        "spanning-tree enumeration is capped at 9 points (n^(n-2) trees), "
        "got " +
        std::to_string(n));
  Tree t;
  t.root = 0;
  t.parent.assign(n, -1);
  t.edge_length.assign(n, 0.0);
  if (n == 1) {
    visit(t);
    return;
  }
  if (n == 2) {
    t.parent[1] = 0;
    t.edge_length[1] = ps.dist(0, 1);
    visit(t);
    return;
  }

  std::vector<int> seq(n - 2, 0);
  std::vector<int> deg(n);
  std::vector<std::pair<int, int>> edges(n - 1);
  std::vector<std::vector<int>> adj(n);
  std::vector<int> stack;
  while (true) {
    // Linear Pruefer decode: repeatedly attach the smallest leaf.
    std::fill(deg.begin(), deg.end(), 1);
    for (int s : seq) ++deg[s];
    int ptr = 0;
    while (deg[ptr] != 1) ++ptr;
    int leaf = ptr;
    int edge_count = 0;
    for (int s : seq) {
      edges[edge_count++] = {leaf, s};
      if (--deg[s] == 1 && s < ptr) {
        leaf = s;
      } else {
        ++ptr;
        while (deg[ptr] != 1) ++ptr;
        leaf = ptr;
      }
    }
    edges[edge_count++] = {leaf, n - 1};

    for (auto& a : adj) a.clear();
    for (int e = 0; e < edge_count; ++e) {
      adj[edges[e].first].push_back(edges[e].second);
      adj[edges[e].second].push_back(edges[e].first);
    }
    std::fill(t.parent.begin(), t.parent.end(), -2);
    t.parent[0] = -1;
    t.edge_length[0] = 0.0;
    stack.assign(1, 0);
    while (!stack.empty()) {
      const int v = stack.back();
      stack.pop_back();
      for (int u : adj[v]) {
        if (t.parent[u] != -2) continue;
        t.parent[u] = v;
        t.edge_length[u] = ps.dist(v, u);
        stack.push_back(u);
      }
    }
    visit(t);

    int pos = n - 3;
    while (pos >= 0 && seq[pos] == n - 1) {
      seq[pos] = 0;
      --pos;
    }
    if (pos < 0) break;
    ++seq[pos];
  }
}

HamPathResult hamiltonian_path_exists(const GridGraph& g) {
  const int n = g.size();
  if (n > 12)
    throw CapExceeded(
        "Hamiltonian-path decision is capped at 12 grid vertices, got " +
        std::to_string(n));
  std::vector<std::uint32_t> adj(n, 0);
  for (int v = 0; v < n; ++v)
    for (int u : g.neighbors(v)) adj[v] |= 1u << u;
  return ham_path_bitmask(adj);
}

}  // namespace dmbst

#include "dmbst/spanning.hpp"

#include <algorithm>
#include <limits>
#include <string>

#include "dmbst/errors.hpp"

namespace dmbst {

void Tree::validate() const {
  const int n = size();
  if (n == 0) throw ValidationError("tree is empty");
  if (root < 0 || root >= n) throw ValidationError("tree root out of range");
  if (parent[root] != -1)
    throw ValidationError("tree root must have parent -1");
  if (static_cast<int>(edge_length.size()) != n)
    throw ValidationError("tree edge_length size mismatch");
  // Walk each node toward the root; a walk longer than n nodes means a cycle.
  for (int v = 0; v < n; ++v) {
    int cur = v;
    int steps = 0;
    while (cur != root) {
      const int p = parent[cur];
      if (p < 0 || p >= n)
        throw ValidationError("tree parent out of range at node " +
                              std::to_string(cur));
      cur = p;
      if (++steps > n)
        throw ValidationError("tree contains a cycle through node " +
                              std::to_string(v));
    }
  }
}

Tree mst(const PointSet& ps, const DistanceTable* table) {
  const int n = ps.size();
  Tree t;
  t.root = 0;
  t.parent.assign(n, -1);
  t.edge_length.assign(n, 0.0);
  if (n <= 1) return t;

  auto dist = [&](int i, int j) {
    return table ? (*table)(i, j) : ps.dist(i, j);
  };

  std::vector<char> in_tree(n, 0);
  std::vector<double> best(n, std::numeric_limits<double>::infinity());
  std::vector<int> best_from(n, 0);
  in_tree[0] = 1;
  for (int v = 1; v < n; ++v) {
    best[v] = dist(0, v);
    best_from[v] = 0;
  }
  for (int added = 1; added < n; ++added) {
    int pick = -1;
    for (int v = 0; v < n; ++v) {
      if (in_tree[v]) continue;
      if (pick == -1) {
        pick = v;
        continue;
      }
      // Tie-break on (length, min endpoint, max endpoint) of the candidate
      // edge so runs are reproducible across platforms.
      const double dv = best[v];
      const double dp = best[pick];
      if (dv < dp) {
        pick = v;
      } else if (dv == dp) {
        const int v_lo = std::min(v, best_from[v]);
        const int v_hi = std::max(v, best_from[v]);
        const int p_lo = std::min(pick, best_from[pick]);
        const int p_hi = std::max(pick, best_from[pick]);
        if (v_lo < p_lo || (v_lo == p_lo && v_hi < p_hi)) pick = v;
      }
    }
    in_tree[pick] = 1;
    t.parent[pick] = best_from[pick];
    t.edge_length[pick] = best[pick];
    for (int v = 0; v < n; ++v) {
      if (in_tree[v]) continue;
      const double d = dist(pick, v);
      if (d < best[v]) {
        best[v] = d;
        best_from[v] = pick;
      } else if (d == best[v]) {
        const int c_lo = std::min(v, pick);
        const int c_hi = std::max(v, pick);
        const int b_lo = std::min(v, best_from[v]);
        const int b_hi = std::max(v, best_from[v]);
        if (c_lo < b_lo || (c_lo == b_lo && c_hi < b_hi)) best_from[v] = pick;
      }
    }
  }
  return t;
}

int max_degree(const Tree& t) {
  const int n = t.size();
  if (n <= 1) return 0;
  std::vector<int> deg(n, 0);
  for (int v = 0; v < n; ++v) {
    if (t.parent[v] < 0) continue;
    ++deg[v];
    ++deg[t.parent[v]];
  }
  return *std::max_element(deg.begin(), deg.end());
}

double bottleneck(const Tree& t) {
  const int n = t.size();
  if (n <= 1) throw ValidationError("tree has no edges");
  double out = 0.0;
  for (int v = 0; v < n; ++v) {
    if (t.parent[v] < 0) continue;
    out = std::max(out, t.edge_length[v]);
  }
  return out;
}

Tree reroot(const Tree& t, int new_root) {
  const int n = t.size();
  if (new_root < 0 || new_root >= n)
    throw ValidationError("reroot target out of range");
  Tree out = t;
  if (new_root == t.root) return out;
  // Reverse parent pointers along the path new_root -> old root.
  int cur = new_root;
  int prev = -1;
  double prev_len = 0.0;
  while (cur != -1) {
    const int next = t.parent[cur];
    const double len = t.edge_length[cur];
    out.parent[cur] = prev;
    out.edge_length[cur] = prev_len;
    prev = cur;
    prev_len = len;
    cur = next;
  }
  out.root = new_root;
  return out;
}

Tree tree_from_edge_list(const PointSet& ps,
                         const std::vector<std::pair<int, int>>& edges,
                         int root) {
  const int n = ps.size();
  if (root < 0 || root >= n) throw ValidationError("root index out of range");
  std::vector<std::vector<int>> adj(n);
  for (const auto& [a, b] : edges) {
    adj[a].push_back(b);
    adj[b].push_back(a);
  }
  Tree t;
  t.root = root;
  t.parent.assign(n, -2);
  t.edge_length.assign(n, 0.0);
  t.parent[root] = -1;
  std::vector<int> stack{root};
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
  t.validate();
  return t;
}

std::vector<Star> stars_of(const Tree& t) {
  const int n = t.size();
  std::vector<Star> out;
  std::vector<std::vector<int>> kids(n);
  for (int v = 0; v < n; ++v) {
    if (t.parent[v] >= 0) kids[t.parent[v]].push_back(v);
  }
  for (int v = 0; v < n; ++v) {
    if (kids[v].empty()) continue;
    Star s;
    s.center = v;
    s.children = kids[v];
    out.push_back(std::move(s));
  }
  return out;
}

}  // namespace dmbst

#include "dmbst/btsp.hpp"

#include <algorithm>
#include <limits>
#include <string>

#include "dmbst/errors.hpp"

namespace dmbst {
namespace {

constexpr int max_visit = 20;
constexpr double inf = std::numeric_limits<double>::infinity();

void check_inputs(const PointSet& ps, int start, std::vector<int>& visit) {
  if (visit.empty()) throw ValidationError("visit set is empty");
  if (static_cast<int>(visit.size()) > max_visit)
    throw CapExceeded("visit set has " + std::to_string(visit.size()) +
                      " vertices, cap is " + std::to_string(max_visit));
  if (start < 0 || start >= ps.size())
    throw ValidationError("start index out of range");
  std::sort(visit.begin(), visit.end());
  for (std::size_t i = 0; i < visit.size(); ++i) {
    if (visit[i] < 0 || visit[i] >= ps.size())
      throw ValidationError("visit index out of range");
    if (i > 0 && visit[i] == visit[i - 1])
      throw ValidationError("visit indices must be distinct");
    if (visit[i] == start)
      throw ValidationError("start vertex cannot appear in visit");
  }
}

/// g[mask * k + last] = minimum achievable max edge over paths that visit
/// exactly the positions in mask and end at position last. The start edge is
/// seeded in when include_start_edge is set, otherwise singletons cost 0.
std::vector<double> value_dp(const PointSet& ps, int start,
                             const std::vector<int>& visit,
                             bool include_start_edge) {
  const int k = static_cast<int>(visit.size());
  const int full = (1 << k) - 1;
  std::vector<double> g(static_cast<std::size_t>(full + 1) * k, inf);
  for (int v = 0; v < k; ++v)
    g[(static_cast<std::size_t>(1) << v) * k + v] =
        include_start_edge ? ps.dist(start, visit[v]) : 0.0;
  for (int mask = 1; mask <= full; ++mask) {
    const std::size_t row = static_cast<std::size_t>(mask) * k;
    for (int last = 0; last < k; ++last) {
      const double cur = g[row + last];
      if (cur == inf) continue;
      for (int nxt = 0; nxt < k; ++nxt) {
        if (mask & (1 << nxt)) continue;
        const double cand = std::max(cur, ps.dist(visit[last], visit[nxt]));
        double& slot = g[(static_cast<std::size_t>(mask) | (1u << nxt)) * k + nxt];
        if (cand < slot) slot = cand;
      }
    }
  }
  return g;
}

/// Lexicographically smallest position sequence whose every edge (and,
/// optionally, the start edge) stays within `bound`. Existence is guaranteed
/// when bound is the value_dp optimum.
std::vector<int> reconstruct(const PointSet& ps, int start,
                             const std::vector<int>& visit, bool include_start_edge,
                             double bound) {
  const int k = static_cast<int>(visit.size());
  const int full = (1 << k) - 1;
  // can_finish[mask * k + v]: from (visited mask, at position v) the rest of
  // the positions can still be appended without exceeding bound.
  std::vector<char> can_finish(static_cast<std::size_t>(full + 1) * k, 0);
  for (int v = 0; v < k; ++v)
    can_finish[static_cast<std::size_t>(full) * k + v] = 1;
  for (int mask = full - 1; mask >= 1; --mask) {
    const std::size_t row = static_cast<std::size_t>(mask) * k;
    for (int v = 0; v < k; ++v) {
      if (!(mask & (1 << v))) continue;
      for (int u = 0; u < k; ++u) {
        if (mask & (1 << u)) continue;
        if (ps.dist(visit[v], visit[u]) <= bound &&
            can_finish[(static_cast<std::size_t>(mask) | (1u << u)) * k + u]) {
          can_finish[row + v] = 1;
          break;
        }
      }
    }
  }
  std::vector<int> seq;
  seq.reserve(k);
  int mask = 0;
  int at = -1;
  for (int step = 0; step < k; ++step) {
    for (int u = 0; u < k; ++u) {
      if (mask & (1 << u)) continue;
      const double edge = at < 0
                              ? (include_start_edge ? ps.dist(start, visit[u]) : 0.0)
                              : ps.dist(visit[at], visit[u]);
      if (edge <= bound &&
          can_finish[(static_cast<std::size_t>(mask) | (1u << u)) * k + u]) {
        seq.push_back(u);
        mask |= 1 << u;
        at = u;
        break;
      }
    }
  }
  return seq;
}

}  // namespace

BottleneckPath btsp_path(const PointSet& ps, int start, std::vector<int> visit) {
  check_inputs(ps, start, visit);
  const int k = static_cast<int>(visit.size());
  const int full = (1 << k) - 1;
  const auto g = value_dp(ps, start, visit, true);
  double best = inf;
  for (int v = 0; v < k; ++v)
    best = std::min(best, g[static_cast<std::size_t>(full) * k + v]);
  const auto seq = reconstruct(ps, start, visit, true, best);

  BottleneckPath out;
  out.order.reserve(k + 1);
  out.order.push_back(start);
  for (int pos : seq) out.order.push_back(visit[pos]);
  out.bottleneck_value = 0.0;
  for (std::size_t i = 1; i < out.order.size(); ++i)
    out.bottleneck_value = std::max(
        out.bottleneck_value, ps.dist(out.order[i - 1], out.order[i]));
  return out;
}

std::vector<int> btsp_order_children(const PointSet& ps, int v,
                                     std::vector<int> children) {
  check_inputs(ps, v, children);
  const int k = static_cast<int>(children.size());
  if (k == 1) return children;
  const int full = (1 << k) - 1;
  const auto g = value_dp(ps, v, children, false);
  double best = inf;
  for (int u = 0; u < k; ++u)
    best = std::min(best, g[static_cast<std::size_t>(full) * k + u]);
  const auto seq = reconstruct(ps, v, children, false, best);
  std::vector<int> out;
  out.reserve(k);
  for (int pos : seq) out.push_back(children[pos]);
  return out;
}

std::vector<double> btsp_subset_table(const PointSet& ps, int start,
                                      std::vector<int> visit) {
  check_inputs(ps, start, visit);
  const int k = static_cast<int>(visit.size());
  const int full = (1 << k) - 1;
  const auto g = value_dp(ps, start, visit, true);
  std::vector<double> table(full + 1, 0.0);
  for (int mask = 1; mask <= full; ++mask) {
    double best = inf;
    for (int v = 0; v < k; ++v) {
      if (mask & (1 << v))
        best = std::min(best, g[static_cast<std::size_t>(mask) * k + v]);
    }
    table[mask] = best;
  }
  return table;
}

}  // namespace dmbst

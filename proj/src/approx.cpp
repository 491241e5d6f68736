#include "dmbst/approx.hpp"

#include <algorithm>
#include <cassert>
#include <cstdint>
#include <limits>
#include <string>

#include "dmbst/btsp.hpp"
#include "dmbst/errors.hpp"
#include "dmbst/parallel.hpp"
#include "dmbst/partition.hpp"

namespace dmbst {
namespace {

constexpr std::uint64_t partition_scan_cap = 10000000;
constexpr int ordering_cap = 20;

std::vector<std::vector<int>> children_of(const Tree& t) {
  std::vector<std::vector<int>> kids(t.size());
  for (int v = 0; v < t.size(); ++v)
    if (t.parent[v] >= 0) kids[t.parent[v]].push_back(v);
  return kids;
}

void nkry_node(const PointSet& ps, const std::vector<std::vector<int>>& kids,
               int delta, bool order_includes_root_edge, int v,
               std::vector<std::pair<int, int>>& edges,
               std::vector<SwapEntry>& log) {
  const auto& c = kids[v];
  const int cnum = static_cast<int>(c.size());
  if (cnum == 0) return;
  const bool trigger = cnum >= delta - 1;
  std::vector<int> order;
  if (cnum == 1 || (!trigger && cnum > ordering_cap)) {
    // A single child needs no ordering; an oversized fan that is kept whole
    // anyway keeps index order rather than tripping the path cap.
    order = c;
  } else if (order_includes_root_edge) {
    const auto bp = btsp_path(ps, v, c);
    order.assign(bp.order.begin() + 1, bp.order.end());
  } else {
    order = btsp_order_children(ps, v, c);
  }
  edges.emplace_back(v, order[0]);
  if (trigger) {
    SwapEntry entry;
    entry.root = v;
    entry.added_edges.emplace_back(v, order[0]);
    for (int i = 0; i + 1 < cnum; ++i) {
      edges.emplace_back(order[i], order[i + 1]);
      entry.added_edges.emplace_back(order[i], order[i + 1]);
    }
    log.push_back(std::move(entry));
  } else {
    for (int i = 1; i < cnum; ++i) edges.emplace_back(v, order[i]);
  }
  for (int u : order)
    nkry_node(ps, kids, delta, order_includes_root_edge, u, edges, log);
}

struct ScanBest {
  double value = std::numeric_limits<double>::infinity();
  std::uint64_t rank = 0;
};

/// Sequential scan of ranks [lo, hi); returns the lowest-rank minimizer.
ScanBest scan_partitions(const KPartitions& parts,
                         const std::vector<double>& table, int c, int k,
                         std::uint64_t lo, std::uint64_t hi) {
  ScanBest best;
  if (lo >= hi) return best;
  std::vector<int> rgs = parts.unrank(lo);
  std::vector<unsigned> mask(k, 0);
  for (std::uint64_t r = lo;; ++r) {
    std::fill(mask.begin(), mask.end(), 0u);
    for (int i = 0; i < c; ++i) mask[rgs[i]] |= 1u << i;
    double val = 0.0;
    for (int b = 0; b < k; ++b) val = std::max(val, table[mask[b]]);
    if (val < best.value) {
      best.value = val;
      best.rank = r;
    }
    if (r + 1 >= hi) break;
    parts.advance(rgs);
  }
  return best;
}

/// Splits the rank range across workers. Each chunk keeps its lowest-rank
/// minimizer and chunks are reduced in ascending order with a strict
/// comparison, so the winner is the global lowest-rank minimizer no matter
/// how many workers ran.
ScanBest best_partition(const KPartitions& parts,
                        const std::vector<double>& table, int c, int k) {
  const std::uint64_t total = parts.count();
  const int workers = worker_count();
  if (workers <= 1 || total < 2048)
    return scan_partitions(parts, table, c, k, 0, total);
  const std::uint64_t step =
      (total + static_cast<std::uint64_t>(workers) - 1) / workers;
  std::vector<ScanBest> results(workers);
#ifdef _OPENMP
#pragma omp parallel for num_threads(workers) schedule(static, 1)
#endif
  for (int w = 0; w < workers; ++w) {
    const std::uint64_t lo = step * static_cast<std::uint64_t>(w);
    const std::uint64_t hi = std::min(total, lo + step);
    if (lo < hi) results[w] = scan_partitions(parts, table, c, k, lo, hi);
  }
  ScanBest best;
  for (const auto& r : results)
    if (r.value < best.value) best = r;
  return best;
}

void pkry_node(const PointSet& ps, const std::vector<std::vector<int>>& kids,
               int delta, int k, int v,
               std::vector<std::pair<int, int>>& edges,
               std::vector<SwapEntry>& log) {
  const auto& c = kids[v];
  const int cnum = static_cast<int>(c.size());
  if (cnum == 0) return;
  if (cnum >= delta - 1) {
    assert(k <= cnum);
    const std::uint64_t total = stirling2(cnum, k);
    if (total > partition_scan_cap)
      throw CapExceeded("partition scan at one star would enumerate " +
                        std::to_string(total) + " partitions, cap is " +
                        std::to_string(partition_scan_cap));
    const auto table = btsp_subset_table(ps, v, c);
    const KPartitions parts(cnum, k);
    const ScanBest best = best_partition(parts, table, cnum, k);
    const auto rgs = parts.unrank(best.rank);
    SwapEntry entry;
    entry.root = v;
    for (const auto& positions : KPartitions::blocks(rgs, k)) {
      std::vector<int> block;
      block.reserve(positions.size());
      for (int pos : positions) block.push_back(c[pos]);
      const auto bp = btsp_path(ps, v, block);
      for (std::size_t i = 1; i < bp.order.size(); ++i) {
        edges.emplace_back(bp.order[i - 1], bp.order[i]);
        entry.added_edges.emplace_back(bp.order[i - 1], bp.order[i]);
      }
    }
    log.push_back(std::move(entry));
  } else {
    for (int u : c) edges.emplace_back(v, u);
  }
  for (int u : c) pkry_node(ps, kids, delta, k, u, edges, log);
}

template <typename Builder>
ApproxResult run_rewiring(const PointSet& ps, int root, Builder&& build) {
  const int n = ps.size();
  if (root < 0 || root >= n) throw ValidationError("root index out of range");
  Tree base = mst(ps);
  if (root != 0) base = reroot(base, root);
  ApproxResult res;
  if (n <= 1) {
    res.tree = base;
    return res;
  }
  const auto kids = children_of(base);
  std::vector<std::pair<int, int>> edges;
  edges.reserve(n - 1);
  build(kids, edges, res.swap_log);
  res.tree = tree_from_edge_list(ps, edges, root);
  res.bottleneck_value = bottleneck(res.tree);
  res.ratio_vs_mst = res.bottleneck_value / bottleneck(base);
  return res;
}

}  // namespace

ApproxResult nkry(const PointSet& ps, int delta, int root,
                  bool order_includes_root_edge) {
  if (delta < 3)
    throw ValidationError("delta must be at least 3, got " +
                          std::to_string(delta));
  return run_rewiring(ps, root, [&](const auto& kids, auto& edges, auto& log) {
    nkry_node(ps, kids, delta, order_includes_root_edge, root, edges, log);
  });
}

ApproxResult pkry(const PointSet& ps, int delta, int k, int root) {
  if (delta < 3)
    throw ValidationError("delta must be at least 3, got " +
                          std::to_string(delta));
  if (k < 1 || k > delta - 2)
    throw ValidationError("k must satisfy 1 <= k <= delta-2, got k = " +
                          std::to_string(k) + " with delta = " +
                          std::to_string(delta));
  return run_rewiring(ps, root, [&](const auto& kids, auto& edges, auto& log) {
    pkry_node(ps, kids, delta, k, root, edges, log);
  });
}

void partitions_into_k(
    const std::vector<int>& items, int k,
    const std::function<void(const std::vector<std::vector<int>>&)>& visit) {
  std::vector<int> sorted = items;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
    throw ValidationError("partition items must be distinct");
  const int n = static_cast<int>(sorted.size());
  if (k < 1 || k > n)
    throw ValidationError("partition block count must satisfy 1 <= k <= " +
                          std::to_string(n) + ", got " + std::to_string(k));
  const KPartitions parts(n, k);
  std::vector<int> rgs = parts.first();
  std::vector<std::vector<int>> blocks(k);
  while (true) {
    for (auto& b : blocks) b.clear();
    for (int i = 0; i < n; ++i) blocks[rgs[i]].push_back(sorted[i]);
    visit(blocks);
    if (!parts.advance(rgs)) break;
  }
}

}  // namespace dmbst

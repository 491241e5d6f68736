#include "dmbst/starsearch.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>

#include "dmbst/btsp.hpp"
#include "dmbst/errors.hpp"
#include "dmbst/parallel.hpp"
#include "dmbst/partition.hpp"
#include "dmbst/rng.hpp"

namespace dmbst {

StarObjective StarObjective::parse(const std::string& text) {
  if (text == "nkry") return nkry();
  if (text.rfind("pkry:", 0) == 0) {
    const std::string tail = text.substr(5);
    try {
      std::size_t used = 0;
      const int k = std::stoi(tail, &used);
      if (used == tail.size() && k >= 1) return pkry(k);
    } catch (const std::exception&) {
    }
  }
  throw ValidationError("unknown objective '" + text +
                        "', expected nkry or pkry:<k>");
}

std::string StarObjective::name() const {
  if (kind == ObjectiveKind::nkry_swap) return "nkry";
  return "pkry:" + std::to_string(k);
}

void StarConfig::validate(double radius_tol, double sep_tol) const {
  if (children.empty()) throw ValidationError("star has no children");
  const Point3 origin{0.0, 0.0, 0.0};
  for (std::size_t i = 0; i < children.size(); ++i) {
    const Point3& p = children[i];
    if (!std::isfinite(p.x) || !std::isfinite(p.y) || !std::isfinite(p.z))
      throw ValidationError("child " + std::to_string(i) +
                            " has a non-finite coordinate");
    const double r = distance(origin, p, metric);
    if (std::abs(r - 1.0) > radius_tol)
      throw ValidationError("child " + std::to_string(i) + " is at radius " +
                            std::to_string(r) + ", not 1");
  }
  for (std::size_t i = 0; i < children.size(); ++i) {
    for (std::size_t j = i + 1; j < children.size(); ++j) {
      const double d = distance(children[i], children[j], metric);
      if (d < 1.0 - sep_tol)
        throw ValidationError("children " + std::to_string(i) + " and " +
                              std::to_string(j) + " are only " +
                              std::to_string(d) + " apart");
    }
  }
}

namespace {

constexpr double neg_inf = -std::numeric_limits<double>::infinity();
constexpr double pos_inf = std::numeric_limits<double>::infinity();
constexpr std::uint64_t pkry_enum_cap = 10000000;

Point3 scaled(const Point3& p, double s) {
  return {p.x * s, p.y * s, p.z * s};
}

/// Retraction onto the metric's unit sphere; false when p is too close to
/// the origin to have a direction.
bool project_surface(Metric m, Point3& p) {
  const double n = m == Metric::euclidean
                       ? std::sqrt(p.x * p.x + p.y * p.y + p.z * p.z)
                       : std::abs(p.x) + std::abs(p.y) + std::abs(p.z);
  if (!(n > 1e-9) || !std::isfinite(n)) return false;
  p = scaled(p, 1.0 / n);
  return true;
}

Point3 sample_surface(Metric m, Rng& rng) {
  while (true) {
    Point3 p;
    if (m == Metric::euclidean) {
      p = {rng.normal(), rng.normal(), rng.normal()};
    } else {
      // Uniform over the octahedron surface: flat simplex weights with
      // independent random signs per coordinate.
      p = {-std::log(1.0 - rng.uniform01()),
           -std::log(1.0 - rng.uniform01()),
           -std::log(1.0 - rng.uniform01())};
      if (rng.next_u64() & 1) p.x = -p.x;
      if (rng.next_u64() & 1) p.y = -p.y;
      if (rng.next_u64() & 1) p.z = -p.z;
    }
    if (project_surface(m, p)) return p;
  }
}

/// Value-only bottleneck-path machinery with buffers reused across
/// evaluations. Index 0 of the local distance matrix is the origin.
class Evaluator {
 public:
  Evaluator(Metric m, int c, const StarObjective& obj)
      : metric_(m), c_(c), obj_(obj), dist_((c + 1) * (c + 1), 0.0),
        g_(static_cast<std::size_t>(1 << c) * c, 0.0) {
    if (obj_.kind == ObjectiveKind::pkry_swap) {
      table_.assign(static_cast<std::size_t>(1) << c_, 0.0);
      for (int j = 1; j <= std::min(obj_.k, c_); ++j) {
        if (stirling2(c_, j) > pkry_enum_cap)
          throw CapExceeded("objective would enumerate more than " +
                            std::to_string(pkry_enum_cap) + " partitions");
        parts_.emplace_back(c_, j);
      }
    }
  }

  double eval(const std::vector<Point3>& children) {
    const Point3 origin{0.0, 0.0, 0.0};
    for (int i = 0; i <= c_; ++i) {
      const Point3& a = i == 0 ? origin : children[i - 1];
      for (int j = i + 1; j <= c_; ++j) {
        const double d = distance(a, children[j - 1], metric_);
        dist_[i * (c_ + 1) + j] = d;
        dist_[j * (c_ + 1) + i] = d;
      }
    }
    run_dp();
    const int full = (1 << c_) - 1;
    if (obj_.kind == ObjectiveKind::nkry_swap) return subset_value(full);
    for (int mask = 1; mask <= full; ++mask) table_[mask] = subset_value(mask);
    double best = pos_inf;
    for (const auto& parts : parts_) {
      const int j = parts.k();
      rgs_ = parts.first();
      while (true) {
        masks_.assign(j, 0);
        for (int i = 0; i < c_; ++i) masks_[rgs_[i]] |= 1u << i;
        double value = 0.0;
        for (int b = 0; b < j; ++b)
          value = std::max(value, table_[masks_[b]]);
        best = std::min(best, value);
        if (!parts.advance(rgs_)) break;
      }
    }
    return best;
  }

 private:
  void run_dp() {
    const int full = (1 << c_) - 1;
    std::fill(g_.begin(), g_.end(), pos_inf);
    for (int v = 0; v < c_; ++v)
      g_[(static_cast<std::size_t>(1) << v) * c_ + v] = dist_[v + 1];
    for (int mask = 1; mask <= full; ++mask) {
      const double* row = &g_[static_cast<std::size_t>(mask) * c_];
      const std::uint32_t rest0 = static_cast<std::uint32_t>(~mask & full);
      for (int last = 0; last < c_; ++last) {
        const double cur = row[last];
        if (cur == pos_inf) continue;
        const double* drow = &dist_[(last + 1) * (c_ + 1) + 1];
        std::uint32_t rest = rest0;
        while (rest) {
          const int nxt = std::countr_zero(rest);
          rest &= rest - 1;
          const double cand = std::max(cur, drow[nxt]);
          double& slot =
              g_[(static_cast<std::size_t>(mask) | (1u << nxt)) * c_ + nxt];
          if (cand < slot) slot = cand;
        }
      }
    }
  }

  double subset_value(int mask) const {
    const double* row = &g_[static_cast<std::size_t>(mask) * c_];
    double best = pos_inf;
    std::uint32_t bits = static_cast<std::uint32_t>(mask);
    while (bits) {
      const int v = std::countr_zero(bits);
      bits &= bits - 1;
      best = std::min(best, row[v]);
    }
    return best;
  }

  Metric metric_;
  int c_;
  StarObjective obj_;
  std::vector<double> dist_;
  std::vector<double> g_;
  std::vector<double> table_;
  std::vector<KPartitions> parts_;
  std::vector<int> rgs_;
  std::vector<std::uint32_t> masks_;
};

bool separation_ok(const std::vector<Point3>& children, int moved_index,
                   const Point3& moved, Metric m) {
  for (int i = 0; i < static_cast<int>(children.size()); ++i) {
    if (i == moved_index) continue;
    if (distance(children[i], moved, m) < 1.0 - 1e-9) return false;
  }
  return true;
}

/// Iterated pairwise repulsion with reprojection; true once every pair is at
/// least unit distance apart.
bool repair(Metric m, std::vector<Point3>& pts, Rng& rng) {
  const int c = static_cast<int>(pts.size());
  for (int round = 0; round < 120; ++round) {
    bool clean = true;
    for (int i = 0; i < c; ++i) {
      for (int j = i + 1; j < c; ++j) {
        const double d = distance(pts[i], pts[j], m);
        if (d >= 1.0) continue;
        clean = false;
        Point3 diff{pts[i].x - pts[j].x, pts[i].y - pts[j].y,
                    pts[i].z - pts[j].z};
        double norm = std::sqrt(diff.x * diff.x + diff.y * diff.y +
                                diff.z * diff.z);
        if (norm < 1e-12) {
          diff = {rng.normal(), rng.normal(), rng.normal()};
          norm = std::sqrt(diff.x * diff.x + diff.y * diff.y +
                           diff.z * diff.z);
          if (norm < 1e-12) continue;
        }
        const double push = ((1.0 + 1e-7) - d) * 0.55 / norm;
        Point3 a{pts[i].x + diff.x * push, pts[i].y + diff.y * push,
                 pts[i].z + diff.z * push};
        Point3 b{pts[j].x - diff.x * push, pts[j].y - diff.y * push,
                 pts[j].z - diff.z * push};
        if (project_surface(m, a)) pts[i] = a;
        if (project_surface(m, b)) pts[j] = b;
      }
    }
    if (clean) return true;
  }
  return false;
}

struct RestartOutcome {
  bool feasible = false;
  double value = neg_inf;
  std::vector<Point3> config;
  std::int64_t evals = 0;
};

RestartOutcome run_restart(Metric m, int c, const StarObjective& obj,
                           int iters, std::uint64_t seed, int restart_index,
                           const StarConfig* init,
                           const std::function<void(const StarConfig&, double)>&
                               observer) {
  Rng rng(Rng::mix(seed, static_cast<std::uint64_t>(restart_index)));
  RestartOutcome out;

  std::vector<Point3> cfg(c);
  bool seeded = false;
  for (int attempt = 0; attempt < 200 && !seeded; ++attempt) {
    if (attempt == 0 && init != nullptr) {
      cfg = init->children;
      bool ok = true;
      for (auto& p : cfg) ok = ok && project_surface(m, p);
      if (!ok) continue;
    } else {
      for (auto& p : cfg) p = sample_surface(m, rng);
    }
    seeded = repair(m, cfg, rng);
  }
  if (!seeded) return out;

  Evaluator eval(m, c, obj);
  auto observe = [&](const std::vector<Point3>& pts, double value) {
    if (observer) observer(StarConfig{pts, m}, value);
  };

  double value = eval.eval(cfg);
  ++out.evals;
  observe(cfg, value);

  double step = 0.3;
  std::vector<Point3> cand = cfg;
  while (out.evals < iters && step >= 1e-5) {
    bool improved = false;
    for (int j = 0; j < c && out.evals < iters; ++j) {
      Point3 moved{cfg[j].x + step * rng.normal(),
                   cfg[j].y + step * rng.normal(),
                   cfg[j].z + step * rng.normal()};
      if (!project_surface(m, moved)) continue;
      if (!separation_ok(cfg, j, moved, m)) continue;
      cand = cfg;
      cand[j] = moved;
      const double v = eval.eval(cand);
      ++out.evals;
      observe(cand, v);
      if (v > value) {
        value = v;
        cfg = cand;
        improved = true;
      }
    }
    if (!improved) step *= 0.95;
  }

  out.feasible = true;
  out.value = value;
  out.config = std::move(cfg);
  return out;
}

}  // namespace

double objective(const StarConfig& config, const StarObjective& obj) {
  const int c = static_cast<int>(config.children.size());
  if (c < 1) throw ValidationError("star has no children");
  if (obj.kind == ObjectiveKind::pkry_swap && obj.k < 1)
    throw ValidationError("block count must be at least 1");
  std::vector<Point3> pts;
  pts.reserve(c + 1);
  pts.push_back({0.0, 0.0, 0.0});
  pts.insert(pts.end(), config.children.begin(), config.children.end());
  PointSet ps(std::move(pts), config.metric);
  std::vector<int> visit(c);
  std::iota(visit.begin(), visit.end(), 1);
  if (obj.kind == ObjectiveKind::nkry_swap)
    return btsp_path(ps, 0, visit).bottleneck_value;

  const auto table = btsp_subset_table(ps, 0, visit);
  double best = pos_inf;
  for (int j = 1; j <= std::min(obj.k, c); ++j) {
    if (stirling2(c, j) > pkry_enum_cap)
      throw CapExceeded("objective would enumerate more than " +
                        std::to_string(pkry_enum_cap) + " partitions");
    const KPartitions parts(c, j);
    std::vector<int> rgs = parts.first();
    std::vector<std::uint32_t> masks(j, 0);
    while (true) {
      std::fill(masks.begin(), masks.end(), 0u);
      for (int i = 0; i < c; ++i) masks[rgs[i]] |= 1u << i;
      double value = 0.0;
      for (int b = 0; b < j; ++b) value = std::max(value, table[masks[b]]);
      best = std::min(best, value);
      if (!parts.advance(rgs)) break;
    }
  }
  return best;
}

SearchReport search(Metric metric, int child_count, const StarObjective& obj,
                    const SearchBudget& budget, std::uint64_t seed,
                    const SearchOptions& opts) {
  if (budget.restarts <= 0 || budget.iters <= 0)
    throw ValidationError("search budget must be positive");
  if (child_count < 1)
    throw ValidationError("child count must be at least 1");
  if (child_count > 20)
    throw CapExceeded("child count " + std::to_string(child_count) +
                      " exceeds the path-solver cap of 20");
  if (opts.init) {
    if (opts.init->metric != metric ||
        static_cast<int>(opts.init->children.size()) != child_count)
      throw ValidationError(
          "initial configuration does not match the search metric and child "
          "count");
    opts.init->validate(2e-3, 2e-3);
  }

  const int workers = opts.eval_observer ? 1 : worker_count();
  std::vector<RestartOutcome> outcomes(budget.restarts);
  const StarConfig* init = opts.init ? &*opts.init : nullptr;

  int executed = 0;
  double running_best = neg_inf;
  while (executed < budget.restarts) {
    const int lo = executed;
    const int hi = std::min(budget.restarts, lo + workers);
#ifdef _OPENMP
#pragma omp parallel for num_threads(workers) schedule(static, 1)
#endif
    for (int r = lo; r < hi; ++r) {
      outcomes[r] = run_restart(metric, child_count, obj, budget.iters, seed,
                                r, r == 0 ? init : nullptr,
                                opts.eval_observer);
    }
    executed = hi;
    for (int r = lo; r < hi; ++r)
      if (outcomes[r].feasible)
        running_best = std::max(running_best, outcomes[r].value);
    if (running_best >= opts.target) break;
  }

  int best_restart = -1;
  double best = neg_inf;
  for (int r = 0; r < executed; ++r) {
    if (outcomes[r].feasible && outcomes[r].value > best) {
      best = outcomes[r].value;
      best_restart = r;
    }
  }
  if (best_restart < 0)
    throw ValidationError(
        "no feasible configuration found: " + std::to_string(child_count) +
        " unit-separated children may not fit on the unit sphere");

  SearchReport report;
  report.best_config = StarConfig{outcomes[best_restart].config, metric};
  report.best_value = objective(report.best_config, obj);
  report.restarts = executed;
  report.seed = seed;
  if (opts.record_trajectory) {
    std::int64_t cumulative = 0;
    double running = neg_inf;
    for (int r = 0; r < executed; ++r) {
      cumulative += outcomes[r].evals;
      if (outcomes[r].feasible && outcomes[r].value > running) {
        running = outcomes[r].value;
        report.trajectory.emplace_back(cumulative, running);
      }
    }
  }
  return report;
}

}  // namespace dmbst

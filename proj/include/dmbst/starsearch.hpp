#pragma once

#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "dmbst/geometry.hpp"

namespace dmbst {

/// Star objective family: NkrySwap is the bottleneck of the optimal
/// origin-anchored path through all children; PkrySwap(k) is the best
/// max-block value over partitions of the children into at most k blocks,
/// each block scored by its own origin-anchored path.
enum class ObjectiveKind { nkry_swap, pkry_swap };

struct StarObjective {
  ObjectiveKind kind = ObjectiveKind::nkry_swap;
  int k = 1;

  static StarObjective nkry() { return {ObjectiveKind::nkry_swap, 1}; }
  static StarObjective pkry(int k) { return {ObjectiveKind::pkry_swap, k}; }
  /// Parses "nkry" or "pkry:<k>".
  static StarObjective parse(const std::string& text);
  std::string name() const;
};

/// Children placed on the unit sphere of the active metric around an
/// implicit origin.
struct StarConfig {
  std::vector<Point3> children;
  Metric metric = Metric::euclidean;

  /// Checks each child sits at distance 1 from the origin (within
  /// radius_tol) and every pair is at least 1 - sep_tol apart. Defaults are
  /// the strict search-time tolerances; published coordinate tables are
  /// checked with looser slack (2e-3) since they carry few digits.
  void validate(double radius_tol = 1e-9, double sep_tol = 1e-9) const;
};

/// Exact objective value for a configuration. PkrySwap enumerates every
/// partition into 1..k blocks over a one-pass subset-bottleneck table.
double objective(const StarConfig& config, const StarObjective& obj);

struct SearchBudget {
  int restarts = 200;
  /// Objective evaluations allowed per restart; a restart also ends when its
  /// shrinking step size falls below 1e-5.
  int iters = 5000;
};

struct SearchOptions {
  /// Used as the starting configuration of restart 0 after projection onto
  /// the surface (coordinate tables are slightly off-surface).
  std::optional<StarConfig> init;
  /// Stop launching restarts once the running best reaches this value.
  /// Checked between restart blocks, so the restart count at which the stop
  /// lands depends on the worker count (but not on scheduling).
  double target = std::numeric_limits<double>::infinity();
  bool record_trajectory = false;
  /// Test hook called with every configuration the search evaluates (all of
  /// them feasible by construction). Setting it forces serial execution.
  std::function<void(const StarConfig&, double)> eval_observer;
};

struct SearchReport {
  StarConfig best_config;
  double best_value = 0.0;
  int restarts = 0;
  std::uint64_t seed = 0;
  /// (cumulative evaluations, value) at each improvement of the running
  /// best, restart by restart; filled when record_trajectory is set.
  std::vector<std::pair<std::int64_t, double>> trajectory;
};

/// Multistart randomized hill climbing for worst-case stars: each restart
/// samples children on the surface, repairs separation violations by
/// repulsion plus reprojection, then climbs with a geometrically shrinking
/// step, accepting only feasible strictly improving moves. Deterministic
/// for a fixed seed: restart r derives its generator from (seed, r) and the
/// reduction keeps the best value with the lowest restart index, so results
/// do not depend on the worker count.
SearchReport search(Metric metric, int child_count, const StarObjective& obj,
                    const SearchBudget& budget, std::uint64_t seed,
                    const SearchOptions& opts = {});

}  // namespace dmbst

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "dmbst/geometry.hpp"
#include "dmbst/grid_graph.hpp"

namespace dmbst {

/// The four reduction flavors: target degree bound 5 or 4, in Euclidean or
/// rectilinear space. Degree-5 variants add upper and lower vertical pseudo
/// nodes; degree-4 variants add the upper one only.
enum class GadgetVariant { euclidean5, euclidean4, rectilinear5, rectilinear4 };

std::string variant_name(GadgetVariant v);
GadgetVariant variant_from_name(const std::string& name);
Metric variant_metric(GadgetVariant v);
int variant_delta(GadgetVariant v);
bool variant_has_lower(GadgetVariant v);

struct GadgetParams {
  GadgetVariant variant = GadgetVariant::euclidean5;
  // Lateral offsets by host color, and vertical offsets by host color.
  double eps_black = 0.29;
  double eps_white = 0.145;
  double eps_up_black = 0.958;
  double eps_up_white = 0.99;
  // Rectilinear slack as an exact rational so the gap audit can run in
  // integer arithmetic; eps_up_white mirrors 1 - gap_num/gap_den there.
  long long gap_num = 1;
  long long gap_den = 100;

  /// Named presets: "cor35" (Euclidean audit constants), "thm36"
  /// (rectilinear rationals 2/5, 1/5, 4/5, 1-gap), "default" (mid-range
  /// Euclidean values; for rectilinear variants same as thm36).
  static GadgetParams preset(const std::string& name, GadgetVariant v);

  void validate() const;
};

enum class PointRole { host, lateral, upper, lower };

std::string role_name(PointRole r);

/// Point layout: hosts first in grid-vertex order, then all laterals, then
/// all uppers, then (degree-5 variants) all lowers, each group in host
/// order.
struct GadgetInstance {
  GridGraph source;
  GadgetParams params;
  PointSet points;
  std::vector<PointRole> roles;
  std::vector<int> host_of;

  int host_count() const { return source.size(); }
};

/// Places the pseudo nodes around each grid vertex: one lateral point offset
/// toward the first missing neighbor in (+x, -x, +y, -y) order, plus the
/// vertical point(s). Offsets depend on the host's color. Rejects grids
/// with a degree-4 vertex, since such a host has no missing direction.
GadgetInstance build_gadget(const GridGraph& g, const GadgetParams& p);

struct GapClassStat {
  std::string name;
  double closed_form = 0.0;
  double min_distance = 0.0;
  long long pair_count = 0;
};

struct GapReport {
  long long host_pseudo_pairs = 0;
  double max_host_pseudo = 0.0;
  long long unit_pairs = 0;
  long long gap_pairs = 0;
  double min_gap = 0.0;
  double required_threshold = 0.0;
  bool rational_exact = false;
  std::vector<GapClassStat> classes;
};

/// Scans every point pair and classifies it: host-to-own-pseudo (must be
/// < 1), grid-edge (exactly 1), everything else (must clear the params'
/// analytic threshold). A pair inside the forbidden interval (1, threshold)
/// throws with the offending indices. Rectilinear instances are re-checked
/// in scaled integer arithmetic.
GapReport audit_gaps(const GadgetInstance& gi);

struct EquivalenceReport {
  bool tree_feasible = false;
  bool ham_path = false;
  bool agree = false;
  double witness_weight = 0.0;
  double expected_weight = 0.0;
  bool weight_matches = false;
};

/// Compares degree-bounded spanning-tree feasibility at bottleneck 1 on the
/// built gadget against Hamiltonian-path existence on the source grid, and
/// checks the witness tree's total weight against the closed-form sum
/// (n-1 plus every pseudo offset) when feasible.
EquivalenceReport equivalence_check(const GridGraph& g, const GadgetParams& p);

}  // namespace dmbst

#include "dmbst/gadget.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numeric>

#include "dmbst/errors.hpp"
#include "dmbst/oracle.hpp"

namespace dmbst {

std::string variant_name(GadgetVariant v) {
  switch (v) {
    case GadgetVariant::euclidean5: return "e5";
    case GadgetVariant::euclidean4: return "e4";
    case GadgetVariant::rectilinear5: return "r5";
    case GadgetVariant::rectilinear4: return "r4";
  }
  throw ValidationError("unknown gadget variant");
}

GadgetVariant variant_from_name(const std::string& name) {
  if (name == "e5") return GadgetVariant::euclidean5;
  if (name == "e4") return GadgetVariant::euclidean4;
  if (name == "r5") return GadgetVariant::rectilinear5;
  if (name == "r4") return GadgetVariant::rectilinear4;
  throw ValidationError("unknown gadget variant '" + name +
                        "', expected e5, e4, r5, or r4");
}

Metric variant_metric(GadgetVariant v) {
  return (v == GadgetVariant::euclidean5 || v == GadgetVariant::euclidean4)
             ? Metric::euclidean
             : Metric::rectilinear;
}

int variant_delta(GadgetVariant v) {
  return (v == GadgetVariant::euclidean5 || v == GadgetVariant::rectilinear5)
             ? 5
             : 4;
}

bool variant_has_lower(GadgetVariant v) { return variant_delta(v) == 5; }

std::string role_name(PointRole r) {
  switch (r) {
    case PointRole::host: return "host";
    case PointRole::lateral: return "lateral";
    case PointRole::upper: return "upper";
    case PointRole::lower: return "lower";
  }
  throw ValidationError("unknown point role");
}

GadgetParams GadgetParams::preset(const std::string& name, GadgetVariant v) {
  const bool euclid = variant_metric(v) == Metric::euclidean;
  GadgetParams p;
  p.variant = v;
  if (name == "cor35") {
    if (!euclid)
      throw ValidationError("preset cor35 applies to Euclidean variants only");
    p.eps_black = 0.292249;
    p.eps_white = p.eps_black / 2;
    p.eps_up_black = (2.0 - p.eps_black * p.eps_black) / 2.0;
    p.eps_up_white = 0.9999999;
    return p;
  }
  if (name == "thm36") {
    if (euclid)
      throw ValidationError(
          "preset thm36 applies to rectilinear variants only");
    p.eps_black = 2.0 / 5.0;
    p.eps_white = 1.0 / 5.0;
    p.eps_up_black = 4.0 / 5.0;
    p.gap_num = 1;
    p.gap_den = 100;
    p.eps_up_white = 1.0 - static_cast<double>(p.gap_num) / p.gap_den;
    return p;
  }
  if (name == "default") {
    if (!euclid) return preset("thm36", v);
    p.eps_black = 0.29;
    p.eps_white = 0.145;
    p.eps_up_black = 0.958;
    p.eps_up_white = 0.99;
    return p;
  }
  throw ValidationError("unknown preset '" + name +
                        "', expected cor35, thm36, or default");
}

void GadgetParams::validate() const {
  if (variant_metric(variant) == Metric::euclidean) {
    const double lateral_limit = (2.0 - std::sqrt(2.0)) / 2.0;
    if (!(eps_white > 0 && eps_white < eps_black &&
          eps_black < lateral_limit))
      throw ValidationError(
          "lateral offsets must satisfy 0 < white < black < (2-sqrt(2))/2");
    if (!(eps_up_black > std::sqrt(1.0 - eps_black * eps_black) &&
          eps_up_black < 1.0))
      throw ValidationError(
          "black vertical offset must lie in (sqrt(1-black^2), 1)");
    if (!(eps_up_white > std::sqrt(1.0 - eps_white * eps_white) &&
          eps_up_white < 1.0))
      throw ValidationError(
          "white vertical offset must lie in (sqrt(1-white^2), 1)");
    if (!(eps_up_white > eps_up_black))
      throw ValidationError(
          "white vertical offset must exceed the black one");
    return;
  }
  if (eps_black != 2.0 / 5.0 || eps_white != 1.0 / 5.0 ||
      eps_up_black != 4.0 / 5.0)
    throw ValidationError(
        "rectilinear offsets are fixed at 2/5, 1/5, 4/5");
  if (gap_num < 1 || gap_den < 1 || gap_num * 100 > gap_den)
    throw ValidationError("rectilinear slack must satisfy 0 < gap <= 1/100");
  const double mirrored = 1.0 - static_cast<double>(gap_num) / gap_den;
  if (std::abs(eps_up_white - mirrored) > 1e-15)
    throw ValidationError(
        "white vertical offset must equal 1 - gap_num/gap_den");
}

GadgetInstance build_gadget(const GridGraph& g, const GadgetParams& p) {
  p.validate();
  const int n = g.size();
  for (int i = 0; i < n; ++i) {
    if (g.degree(i) > 3) {
      const auto [x, y] = g.vertices()[i];
      throw ValidationError("grid vertex (" + std::to_string(x) + ", " +
                            std::to_string(y) +
                            ") has degree 4; the construction needs a "
                            "missing neighbor for its lateral point");
    }
  }

  const bool lower = variant_has_lower(p.variant);
  std::vector<Point3> pts;
  std::vector<PointRole> roles;
  std::vector<int> host_of;
  pts.reserve(n * (lower ? 4 : 3));

  for (int i = 0; i < n; ++i) {
    const auto [x, y] = g.vertices()[i];
    pts.push_back({static_cast<double>(x), static_cast<double>(y), 0.0});
    roles.push_back(PointRole::host);
    host_of.push_back(i);
  }
  std::vector<std::pair<int, int>> occupied(g.vertices());
  auto is_occupied = [&](int x, int y) {
    return std::binary_search(occupied.begin(), occupied.end(),
                              std::pair{x, y});
  };
  for (int i = 0; i < n; ++i) {
    const auto [x, y] = g.vertices()[i];
    const double off = g.is_black(i) ? p.eps_black : p.eps_white;
    Point3 lat{static_cast<double>(x), static_cast<double>(y), 0.0};
    if (!is_occupied(x + 1, y)) {
      lat.x += off;
    } else if (!is_occupied(x - 1, y)) {
      lat.x -= off;
    } else if (!is_occupied(x, y + 1)) {
      lat.y += off;
    } else {
      lat.y -= off;
    }
    pts.push_back(lat);
    roles.push_back(PointRole::lateral);
    host_of.push_back(i);
  }
  for (int i = 0; i < n; ++i) {
    const auto [x, y] = g.vertices()[i];
    const double off = g.is_black(i) ? p.eps_up_black : p.eps_up_white;
    pts.push_back({static_cast<double>(x), static_cast<double>(y), off});
    roles.push_back(PointRole::upper);
    host_of.push_back(i);
  }
  if (lower) {
    for (int i = 0; i < n; ++i) {
      const auto [x, y] = g.vertices()[i];
      const double off = g.is_black(i) ? p.eps_up_black : p.eps_up_white;
      pts.push_back({static_cast<double>(x), static_cast<double>(y), -off});
      roles.push_back(PointRole::lower);
      host_of.push_back(i);
    }
  }

  GadgetInstance gi{g, p, PointSet(std::move(pts), variant_metric(p.variant)),
                    std::move(roles), std::move(host_of)};
  return gi;
}

namespace {

bool is_vertical(PointRole r) {
  return r == PointRole::upper || r == PointRole::lower;
}

/// Index of the named gap class a pair belongs to, or -1.
int classify(PointRole ra, bool ba, PointRole rb, bool bb) {
  // Normalize so the lexically earlier role/color combination comes first.
  if (ra == PointRole::lateral && rb == PointRole::lateral) {
    if (ba && bb) return 0;
    if (ba != bb) return 1;
    return -1;
  }
  if (ra == PointRole::lateral && rb == PointRole::host && !ba) return 2;
  if (rb == PointRole::lateral && ra == PointRole::host && !bb) return 2;
  if (is_vertical(ra) && rb == PointRole::lateral && ba && bb) return 3;
  if (is_vertical(rb) && ra == PointRole::lateral && ba && bb) return 3;
  if (is_vertical(ra) && rb == PointRole::lateral && !ba && !bb) return 4;
  if (is_vertical(rb) && ra == PointRole::lateral && !ba && !bb) return 4;
  if (is_vertical(ra) && is_vertical(rb) && ba != bb) return 5;
  return -1;
}

void rational_audit(const GadgetInstance& gi, GapReport& report) {
  const auto& p = gi.params;
  const long long scale = std::lcm<long long>(5, p.gap_den);
  const int total = gi.points.size();
  std::vector<std::array<long long, 3>> scaled(total);
  for (int i = 0; i < total; ++i) {
    const Point3& pt = gi.points.points[i];
    for (int c = 0; c < 3; ++c) {
      const double coord = c == 0 ? pt.x : (c == 1 ? pt.y : pt.z);
      const double exact = coord * static_cast<double>(scale);
      const long long rounded = std::llround(exact);
      if (std::abs(exact - static_cast<double>(rounded)) > 1e-6)
        throw ValidationError(
            "rectilinear audit: coordinate is not a multiple of 1/" +
            std::to_string(scale));
      scaled[i][c] = rounded;
    }
  }
  // Forbidden-interval bound 6/5 - gap as a scaled integer, exactly.
  const long long threshold =
      6 * (scale / 5) - (scale / p.gap_den) * p.gap_num;
  const int hosts = gi.host_count();
  for (int i = 0; i < total; ++i) {
    for (int j = i + 1; j < total; ++j) {
      const long long d = std::abs(scaled[i][0] - scaled[j][0]) +
                          std::abs(scaled[i][1] - scaled[j][1]) +
                          std::abs(scaled[i][2] - scaled[j][2]);
      const bool own_pseudo =
          (gi.roles[i] == PointRole::host && gi.host_of[j] == i) ||
          (gi.roles[j] == PointRole::host && gi.host_of[i] == j);
      if (own_pseudo) {
        if (d >= scale)
          throw ValidationError("rectilinear audit: host-pseudo pair (" +
                                std::to_string(i) + ", " + std::to_string(j) +
                                ") is not shorter than 1");
        continue;
      }
      if (i < hosts && j < hosts) {
        const auto& nbrs = gi.source.neighbors(i);
        if (std::find(nbrs.begin(), nbrs.end(), j) != nbrs.end()) {
          if (d != scale)
            throw ValidationError("rectilinear audit: grid edge (" +
                                  std::to_string(i) + ", " +
                                  std::to_string(j) + ") is not unit length");
          continue;
        }
      }
      if (d < threshold)
        throw ValidationError(
            "rectilinear audit: pair (" + std::to_string(i) + ", " +
            std::to_string(j) + ") lands inside the forbidden interval");
    }
  }
  report.rational_exact = true;
}

}  // namespace

GapReport audit_gaps(const GadgetInstance& gi) {
  const auto& p = gi.params;
  const bool euclid = variant_metric(p.variant) == Metric::euclidean;
  GapReport report;

  if (euclid) {
    report.classes = {
        {"black-lateral/black-lateral",
         std::sqrt(2.0) * (1.0 - p.eps_black), 0, 0},
        {"black-lateral/white-lateral",
         std::hypot(p.eps_black - p.eps_white, 1.0), 0, 0},
        {"white-lateral/host", std::hypot(1.0, p.eps_white), 0, 0},
        {"black-vertical/black-lateral",
         std::hypot(p.eps_up_black, p.eps_black), 0, 0},
        {"white-vertical/white-lateral",
         std::hypot(p.eps_up_white, p.eps_white), 0, 0},
        {"black-vertical/white-vertical",
         std::hypot(p.eps_up_white - p.eps_up_black, 1.0), 0, 0},
    };
  } else {
    report.classes = {
        {"black-lateral/black-lateral", 2.0 * (1.0 - p.eps_black), 0, 0},
        {"black-lateral/white-lateral",
         1.0 + (p.eps_black - p.eps_white), 0, 0},
        {"white-lateral/host", 1.0 + p.eps_white, 0, 0},
        {"black-vertical/black-lateral", p.eps_up_black + p.eps_black, 0, 0},
        {"white-vertical/white-lateral", p.eps_up_white + p.eps_white, 0, 0},
        {"black-vertical/white-vertical",
         1.0 + (p.eps_up_white - p.eps_up_black), 0, 0},
    };
  }
  for (auto& cls : report.classes)
    cls.min_distance = std::numeric_limits<double>::infinity();

  report.required_threshold = std::numeric_limits<double>::infinity();
  for (const auto& cls : report.classes)
    report.required_threshold =
        std::min(report.required_threshold, cls.closed_form);

  const int total = gi.points.size();
  const int hosts = gi.host_count();
  double min_gap = std::numeric_limits<double>::infinity();
  for (int i = 0; i < total; ++i) {
    for (int j = i + 1; j < total; ++j) {
      const double d = gi.points.dist(i, j);
      const bool own_pseudo =
          (gi.roles[i] == PointRole::host && gi.host_of[j] == i) ||
          (gi.roles[j] == PointRole::host && gi.host_of[i] == j);
      if (own_pseudo) {
        if (d >= 1.0)
          throw ValidationError("audit failure: host-pseudo pair (" +
                                std::to_string(i) + ", " + std::to_string(j) +
                                ") has distance " + std::to_string(d) +
                                " >= 1");
        ++report.host_pseudo_pairs;
        report.max_host_pseudo = std::max(report.max_host_pseudo, d);
        continue;
      }
      if (i < hosts && j < hosts) {
        const auto& nbrs = gi.source.neighbors(i);
        if (std::find(nbrs.begin(), nbrs.end(), j) != nbrs.end()) {
          if (d != 1.0)
            throw ValidationError("audit failure: grid edge (" +
                                  std::to_string(i) + ", " +
                                  std::to_string(j) + ") has distance " +
                                  std::to_string(d) + " != 1");
          ++report.unit_pairs;
          continue;
        }
      }
      if (d < report.required_threshold - 1e-12)
        throw ValidationError(
            "audit failure: pair (" + std::to_string(i) + ", " +
            std::to_string(j) + ") has distance " + std::to_string(d) +
            " inside the forbidden interval (1, " +
            std::to_string(report.required_threshold) + ")");
      ++report.gap_pairs;
      min_gap = std::min(min_gap, d);
      const int cls = classify(gi.roles[i], gi.source.is_black(gi.host_of[i]),
                               gi.roles[j], gi.source.is_black(gi.host_of[j]));
      if (cls >= 0) {
        auto& stat = report.classes[cls];
        ++stat.pair_count;
        stat.min_distance = std::min(stat.min_distance, d);
      }
    }
  }
  report.min_gap = report.gap_pairs > 0 ? min_gap : 0.0;
  for (auto& cls : report.classes)
    if (cls.pair_count == 0) cls.min_distance = 0.0;

  if (!euclid) rational_audit(gi, report);
  return report;
}

EquivalenceReport equivalence_check(const GridGraph& g,
                                    const GadgetParams& p) {
  const GadgetInstance gi = build_gadget(g, p);
  const auto tree = feasible_bounded_tree(gi.points, variant_delta(p.variant),
                                          1.0 + 1e-9);
  const auto ham = hamiltonian_path_exists(g);

  EquivalenceReport report;
  report.tree_feasible = tree.feasible;
  report.ham_path = ham.exists;
  report.agree = tree.feasible == ham.exists;

  const double per_black =
      p.eps_black +
      (variant_has_lower(p.variant) ? 2.0 : 1.0) * p.eps_up_black;
  const double per_white =
      p.eps_white +
      (variant_has_lower(p.variant) ? 2.0 : 1.0) * p.eps_up_white;
  const int blacks = g.black_count();
  const int whites = g.size() - blacks;
  report.expected_weight =
      (g.size() - 1) + per_black * blacks + per_white * whites;
  if (tree.feasible) {
    double weight = 0.0;
    for (double len : tree.witness.edge_length) weight += len;
    report.witness_weight = weight;
    report.weight_matches =
        std::abs(weight - report.expected_weight) <= 1e-9;
  }
  return report;
}

}  // namespace dmbst

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN

#include <cmath>
#include <string>
#include <utility>
#include <vector>

#include "dmbst/errors.hpp"
#include "dmbst/gadget.hpp"
#include "dmbst/geometry.hpp"
#include "dmbst/grid_graph.hpp"
#include "dmbst/rng.hpp"
#include "doctest.h"
#include "test_support.hpp"

using namespace dmbst;

namespace {

const std::vector<std::pair<int, int>> path3 = {{0, 0}, {1, 0}, {2, 0}};
const std::vector<std::pair<int, int>> claw4 = {{1, 1}, {0, 1}, {2, 1}, {1, 0}};
const std::vector<std::pair<int, int>> square4 = {{0, 0}, {1, 0}, {0, 1}, {1, 1}};
const std::vector<std::pair<int, int>> tee5 = {
    {0, 0}, {0, 1}, {1, 1}, {2, 1}, {1, 2}};

}  // namespace

TEST_CASE("variant names round trip and carry metric and degree") {
  for (const GadgetVariant v :
       {GadgetVariant::euclidean5, GadgetVariant::euclidean4,
        GadgetVariant::rectilinear5, GadgetVariant::rectilinear4}) {
    CHECK(variant_from_name(variant_name(v)) == v);
  }
  CHECK(variant_metric(GadgetVariant::euclidean5) == Metric::euclidean);
  CHECK(variant_metric(GadgetVariant::rectilinear4) == Metric::rectilinear);
  CHECK(variant_delta(GadgetVariant::euclidean5) == 5);
  CHECK(variant_delta(GadgetVariant::euclidean4) == 4);
  CHECK(variant_has_lower(GadgetVariant::rectilinear5));
  CHECK(!variant_has_lower(GadgetVariant::rectilinear4));
  CHECK_THROWS_AS(variant_from_name("euclid"), ValidationError);
}

TEST_CASE("presets pin the published offset values") {
  const GadgetParams c = GadgetParams::preset("cor35", GadgetVariant::euclidean5);
  CHECK(c.eps_black == 0.292249);
  CHECK(c.eps_white == 0.292249 / 2);
  CHECK(c.eps_up_black == (2.0 - 0.292249 * 0.292249) / 2.0);
  CHECK(c.eps_up_white == 0.9999999);
  CHECK_NOTHROW(c.validate());

  const GadgetParams t =
      GadgetParams::preset("thm36", GadgetVariant::rectilinear4);
  CHECK(t.eps_black == 2.0 / 5.0);
  CHECK(t.eps_white == 1.0 / 5.0);
  CHECK(t.eps_up_black == 4.0 / 5.0);
  CHECK(t.gap_num == 1);
  CHECK(t.gap_den == 100);
  CHECK(t.eps_up_white == 1.0 - 1.0 / 100.0);
  CHECK_NOTHROW(t.validate());

  const GadgetParams d =
      GadgetParams::preset("default", GadgetVariant::euclidean4);
  CHECK(d.eps_black == 0.29);
  CHECK_NOTHROW(d.validate());
  const GadgetParams dr =
      GadgetParams::preset("default", GadgetVariant::rectilinear5);
  CHECK(dr.eps_black == 2.0 / 5.0);

  CHECK_THROWS_AS(GadgetParams::preset("cor35", GadgetVariant::rectilinear5),
                  ValidationError);
  CHECK_THROWS_AS(GadgetParams::preset("thm36", GadgetVariant::euclidean4),
                  ValidationError);
  CHECK_THROWS_AS(GadgetParams::preset("nosuch", GadgetVariant::euclidean5),
                  ValidationError);
}

TEST_CASE("parameter validation rejects offsets outside the analytic ranges") {
  GadgetParams p = GadgetParams::preset("default", GadgetVariant::euclidean5);
  p.eps_black = 0.291;
  CHECK_NOTHROW(p.validate());
  p.eps_black = 0.32;
  CHECK_THROWS_AS(p.validate(), ValidationError);
  p = GadgetParams::preset("default", GadgetVariant::euclidean5);
  p.eps_white = p.eps_black;
  CHECK_THROWS_AS(p.validate(), ValidationError);
  p = GadgetParams::preset("default", GadgetVariant::euclidean5);
  p.eps_up_black = 0.5;
  CHECK_THROWS_AS(p.validate(), ValidationError);
  p = GadgetParams::preset("default", GadgetVariant::euclidean5);
  p.eps_up_white = p.eps_up_black;
  CHECK_THROWS_AS(p.validate(), ValidationError);

  GadgetParams r = GadgetParams::preset("thm36", GadgetVariant::rectilinear5);
  r.gap_num = 3;
  r.gap_den = 100;
  CHECK_THROWS_AS(r.validate(), ValidationError);
  r = GadgetParams::preset("thm36", GadgetVariant::rectilinear5);
  r.eps_black = 0.41;
  CHECK_THROWS_AS(r.validate(), ValidationError);
  r = GadgetParams::preset("thm36", GadgetVariant::rectilinear5);
  r.gap_num = 1;
  r.gap_den = 200;
  r.eps_up_white = 1.0 - 1.0 / 200.0;
  CHECK_NOTHROW(r.validate());
}

TEST_CASE("built gadgets lay out hosts then laterals then verticals") {
  const GridGraph g(tee5);
  const int n = g.size();
  for (const char* variant : {"e5", "e4", "r5", "r4"}) {
    const GadgetVariant v = variant_from_name(variant);
    const GadgetParams p = GadgetParams::preset("default", v);
    const GadgetInstance gi = build_gadget(g, p);
    const int per_host = variant_has_lower(v) ? 4 : 3;
    CHECK(gi.points.size() == per_host * n);
    CHECK(gi.points.metric == variant_metric(v));
    REQUIRE(gi.roles.size() == static_cast<std::size_t>(per_host * n));
    REQUIRE(gi.host_of.size() == static_cast<std::size_t>(per_host * n));
    for (int i = 0; i < n; ++i) {
      CHECK(gi.roles[static_cast<std::size_t>(i)] == PointRole::host);
      CHECK(gi.host_of[static_cast<std::size_t>(i)] == i);
      const auto [x, y] = g.vertices()[static_cast<std::size_t>(i)];
      CHECK(gi.points.points[static_cast<std::size_t>(i)] ==
            Point3{static_cast<double>(x), static_cast<double>(y), 0.0});
      CHECK(gi.roles[static_cast<std::size_t>(n + i)] == PointRole::lateral);
      CHECK(gi.host_of[static_cast<std::size_t>(n + i)] == i);
      CHECK(gi.roles[static_cast<std::size_t>(2 * n + i)] == PointRole::upper);
      CHECK(gi.host_of[static_cast<std::size_t>(2 * n + i)] == i);
      const Point3 up = gi.points.points[static_cast<std::size_t>(2 * n + i)];
      CHECK(up.x == static_cast<double>(x));
      CHECK(up.y == static_cast<double>(y));
      CHECK(up.z == (g.is_black(i) ? p.eps_up_black : p.eps_up_white));
      if (variant_has_lower(v)) {
        CHECK(gi.roles[static_cast<std::size_t>(3 * n + i)] ==
              PointRole::lower);
        const Point3 dn =
            gi.points.points[static_cast<std::size_t>(3 * n + i)];
        CHECK(dn.z == -(g.is_black(i) ? p.eps_up_black : p.eps_up_white));
      }
    }
  }
}

TEST_CASE("the lateral point takes the first missing axis direction") {
  const GridGraph g(tee5);
  const GadgetParams p =
      GadgetParams::preset("default", GadgetVariant::euclidean5);
  const GadgetInstance gi = build_gadget(g, p);
  const int n = g.size();
  // Sorted vertex order: (0,0) (0,1) (1,1) (1,2) (2,1).
  const std::vector<Point3> expected = {
      {0.0 + p.eps_black, 0.0, 0.0},  // (0,0) black: +x free
      {0.0 - p.eps_white, 1.0, 0.0},  // (0,1) white: +x taken, -x free
      {1.0, 1.0 - p.eps_black, 0.0},  // (1,1) black: only -y free
      {1.0 + p.eps_white, 2.0, 0.0},  // (1,2) white: +x free
      {2.0 + p.eps_white, 1.0, 0.0},  // (2,1) white: +x free
  };
  for (int i = 0; i < n; ++i)
    CHECK(gi.points.points[static_cast<std::size_t>(n + i)] ==
          expected[static_cast<std::size_t>(i)]);
}

TEST_CASE("a degree four grid vertex blocks the construction by name") {
  const GridGraph plus({{1, 1}, {0, 1}, {2, 1}, {1, 0}, {1, 2}});
  const GadgetParams p =
      GadgetParams::preset("default", GadgetVariant::euclidean5);
  try {
    build_gadget(plus, p);
    FAIL("expected a validation error");
  } catch (const ValidationError& e) {
    CHECK(std::string(e.what()).find("(1, 1)") != std::string::npos);
    CHECK(std::string(e.what()).find("degree 4") != std::string::npos);
  }
}

TEST_CASE("gap audits on random grids respect every class threshold") {
  Rng rng(700);
  for (int iter = 0; iter < 12; ++iter) {
    const GridGraph g(
        testsup::random_degree3_grid(rng, 3 + static_cast<int>(rng.below(8))));
    for (const char* preset : {"cor35", "default"}) {
      const GadgetParams p =
          GadgetParams::preset(preset, GadgetVariant::euclidean5);
      const GapReport report = audit_gaps(build_gadget(g, p));
      CHECK(report.max_host_pseudo < 1.0);
      CHECK(report.host_pseudo_pairs ==
            static_cast<long long>(g.size()) * 3);
      CHECK(report.unit_pairs == static_cast<long long>(g.edges().size()));
      CHECK(report.min_gap >= report.required_threshold - 1e-12);
      CHECK(!report.rational_exact);
      for (const auto& cls : report.classes) {
        if (cls.pair_count > 0)
          CHECK(cls.min_distance >= cls.closed_form - 1e-12);
      }
    }
    const GadgetParams r =
        GadgetParams::preset("thm36", GadgetVariant::rectilinear4);
    const GapReport rect = audit_gaps(build_gadget(g, r));
    CHECK(rect.rational_exact);
    CHECK(rect.min_gap >= rect.required_threshold - 1e-12);
    CHECK(rect.required_threshold ==
          doctest::Approx(6.0 / 5.0 -
                          static_cast<double>(r.gap_num) / r.gap_den)
              .epsilon(1e-12));
  }
}

TEST_CASE("the tee grid attains the facing black lateral pair exactly") {
  const GridGraph g(tee5);
  const GadgetParams p =
      GadgetParams::preset("cor35", GadgetVariant::euclidean5);
  const GapReport report = audit_gaps(build_gadget(g, p));
  REQUIRE(report.classes.size() == 6);
  const auto& facing = report.classes[0];
  CHECK(facing.name == "black-lateral/black-lateral");
  CHECK(facing.pair_count > 0);
  CHECK(facing.closed_form == std::sqrt(2.0) * (1.0 - p.eps_black));
  CHECK(facing.min_distance ==
        doctest::Approx(facing.closed_form).epsilon(1e-12));
  CHECK(report.min_gap >= 1.0009);
}

TEST_CASE("a displaced point makes the audit throw and name the pair") {
  const GridGraph g(path3);
  const GadgetParams p =
      GadgetParams::preset("cor35", GadgetVariant::euclidean5);
  GadgetInstance gi = build_gadget(g, p);
  gi.points.points[2].x = 1.0005;
  try {
    audit_gaps(gi);
    FAIL("expected a validation error");
  } catch (const ValidationError& e) {
    CHECK(std::string(e.what()).find("(0, 2)") != std::string::npos);
    CHECK(std::string(e.what()).find("forbidden") != std::string::npos);
  }
}

TEST_CASE("feasibility at bottleneck one mirrors hamiltonicity of the grid") {
  for (const char* variant : {"e5", "e4", "r5", "r4"}) {
    const GadgetVariant v = variant_from_name(variant);
    const GadgetParams p = GadgetParams::preset(
        variant_metric(v) == Metric::euclidean ? "cor35" : "thm36", v);

    const EquivalenceReport path_rep = equivalence_check(GridGraph(path3), p);
    CHECK(path_rep.ham_path);
    CHECK(path_rep.tree_feasible);
    CHECK(path_rep.agree);
    CHECK(path_rep.weight_matches);
    CHECK(path_rep.witness_weight ==
          doctest::Approx(path_rep.expected_weight).epsilon(1e-12));

    const EquivalenceReport claw_rep = equivalence_check(GridGraph(claw4), p);
    CHECK(!claw_rep.ham_path);
    CHECK(!claw_rep.tree_feasible);
    CHECK(claw_rep.agree);
    CHECK(!claw_rep.weight_matches);

    const EquivalenceReport square_rep =
        equivalence_check(GridGraph(square4), p);
    CHECK(square_rep.ham_path);
    CHECK(square_rep.tree_feasible);
    CHECK(square_rep.agree);
    CHECK(square_rep.weight_matches);
  }
}

TEST_CASE("the closed form witness weights match the published sums") {
  const EquivalenceReport e5 = equivalence_check(
      GridGraph(path3),
      GadgetParams::preset("cor35", GadgetVariant::euclidean5));
  CHECK(e5.expected_weight == doctest::Approx(8.559803344).epsilon(1e-9));
  const EquivalenceReport r4 = equivalence_check(
      GridGraph(path3),
      GadgetParams::preset("thm36", GadgetVariant::rectilinear4));
  CHECK(r4.expected_weight == doctest::Approx(5.59).epsilon(1e-12));
}

TEST_CASE("the polyomino helper enumerates the known fixed counts") {
  const std::vector<std::size_t> expected = {1, 2, 6, 19, 63};
  for (int size = 1; size <= 5; ++size) {
    const auto shapes = testsup::polyominoes(size);
    CHECK(shapes.size() == expected[static_cast<std::size_t>(size - 1)]);
    for (const auto& cells : shapes)
      CHECK(cells.size() == static_cast<std::size_t>(size));
  }
}

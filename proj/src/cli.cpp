#include "dmbst/cli.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <iostream>
#include <limits>
#include <set>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "CLI11.hpp"

#include "dmbst/approx.hpp"
#include "dmbst/btsp.hpp"
#include "dmbst/errors.hpp"
#include "dmbst/fixtures.hpp"
#include "dmbst/gadget.hpp"
#include "dmbst/geometry.hpp"
#include "dmbst/grid_graph.hpp"
#include "dmbst/io.hpp"
#include "dmbst/oracle.hpp"
#include "dmbst/rng.hpp"
#include "dmbst/spanning.hpp"
#include "dmbst/starsearch.hpp"
#include "dmbst/version.hpp"

namespace dmbst {

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

/// Per-invocation plumbing: where the result goes and what the manifest
/// records. Writing to --out also writes <out>.manifest.json beside it.
struct Run {
  std::string command;
  std::vector<std::pair<std::string, std::string>> flags;
  std::string out_path;
  std::string input_digest = fnv1a64_hex("");
  std::uint64_t seed = 0;
  Clock::time_point t0 = Clock::now();

  void flag(const std::string& name, const std::string& value) {
    flags.emplace_back(name, value);
  }

  void digest_file(const std::string& path) {
    input_digest = fnv1a64_hex(read_text_file(path));
  }

  void deliver(const std::string& text) {
    if (out_path.empty()) {
      std::cout << text;
      return;
    }
    write_text_file(out_path, text);
    RunManifest m;
    m.command = command;
    m.flags = flags;
    m.seed = seed;
    m.input_digest = input_digest;
    m.outputs.push_back(out_path);
    m.wall_ms = ms_since(t0);
    write_text_file(out_path + ".manifest.json",
                    render_json(manifest_to_json(m)));
  }

  void deliver(const Json& doc) { deliver(render_json(doc)); }
};

SearchBudget parse_budget(const std::string& text) {
  const auto pos = text.find('x');
  if (pos != std::string::npos && pos > 0 && pos + 1 < text.size()) {
    try {
      std::size_t ur = 0, ui = 0;
      const std::string left = text.substr(0, pos);
      const std::string right = text.substr(pos + 1);
      const int restarts = std::stoi(left, &ur);
      const int iters = std::stoi(right, &ui);
      if (ur == left.size() && ui == right.size() && restarts > 0 &&
          iters > 0)
        return {restarts, iters};
    } catch (const std::exception&) {
    }
  }
  throw ValidationError("budget must look like 200x5000 (restarts x "
                        "iterations per restart)");
}

std::vector<int> parse_int_list(const std::string& text) {
  std::vector<int> out;
  std::size_t pos = 0;
  while (pos < text.size()) {
    auto next = text.find(',', pos);
    if (next == std::string::npos) next = text.size();
    const std::string cell = text.substr(pos, next - pos);
    try {
      std::size_t used = 0;
      out.push_back(std::stoi(cell, &used));
      if (used != cell.size()) throw std::invalid_argument(cell);
    } catch (const std::exception&) {
      throw ValidationError("'" + cell + "' is not an integer");
    }
    pos = next + 1;
  }
  return out;
}

Json swaps_to_json(const std::vector<SwapEntry>& log) {
  Json arr = Json::array();
  for (const SwapEntry& e : log) {
    Json entry;
    entry["root"] = e.root;
    Json edges = Json::array();
    for (const auto& [a, b] : e.added_edges)
      edges.push_back(Json::array({a, b}));
    entry["added_edges"] = std::move(edges);
    arr.push_back(std::move(entry));
  }
  return arr;
}

Json approx_to_json(const char* algorithm, int delta, int k, int root,
                    const ApproxResult& r) {
  Json doc;
  doc["algorithm"] = algorithm;
  doc["delta"] = delta;
  if (k > 0) doc["k"] = k;
  doc["root"] = root;
  doc["bottleneck"] = r.bottleneck_value;
  doc["ratio_vs_mst"] = r.ratio_vs_mst;
  doc["swaps"] = swaps_to_json(r.swap_log);
  doc["tree"] = tree_to_json(r.tree);
  return doc;
}

PointSet generate_instance(const std::string& generator, int n,
                           std::uint64_t seed, Metric m) {
  if (n < 2)
    throw ValidationError("bench instances need at least 2 points");
  std::vector<Point3> pts;
  pts.reserve(n);
  if (generator == "grid") {
    int side = 1;
    while (side * side * side < n) ++side;
    for (int x = 0; x < side && static_cast<int>(pts.size()) < n; ++x)
      for (int y = 0; y < side && static_cast<int>(pts.size()) < n; ++y)
        for (int z = 0; z < side && static_cast<int>(pts.size()) < n; ++z)
          pts.push_back({static_cast<double>(x), static_cast<double>(y),
                         static_cast<double>(z)});
    return PointSet(std::move(pts), m);
  }
  Rng rng(Rng::mix(seed, 0x62656e6368ULL));
  std::set<std::tuple<double, double, double>> seen;
  std::vector<Point3> centers;
  if (generator == "cluster") {
    for (int c = 0; c < 3; ++c)
      centers.push_back(
          {rng.uniform01(), rng.uniform01(), rng.uniform01()});
  } else if (generator != "uniform-cube") {
    throw ValidationError("unknown generator '" + generator +
                          "', expected uniform-cube, grid, or cluster");
  }
  while (static_cast<int>(pts.size()) < n) {
    Point3 p;
    if (generator == "uniform-cube") {
      p = {rng.uniform01(), rng.uniform01(), rng.uniform01()};
    } else {
      const Point3& c = centers[rng.below(centers.size())];
      p = {c.x + 0.05 * rng.normal(), c.y + 0.05 * rng.normal(),
           c.z + 0.05 * rng.normal()};
    }
    if (seen.insert({p.x, p.y, p.z}).second) pts.push_back(p);
  }
  return PointSet(std::move(pts), m);
}

std::string format_sig(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

}  // namespace

int run_cli(int argc, char** argv) {
  CLI::App app{"degree-bounded minimum bottleneck spanning trees in E3/R3"};
  app.set_version_flag("--version", artifact_version);
  app.require_subcommand(1);

  std::string in_path, grid_path, out_path, init_path;
  std::string metric_str = "euclidean";
  std::string objective_str = "nkry";
  std::string budget_str = "200x5000";
  std::string visit_str, fixtures_dir, fixture_name;
  std::string variant_str = "e5", preset_str = "default";
  std::string generator = "uniform-cube", deltas_str = "3,4,5";
  int delta = 3, kblocks = 1, root = 0, start = 0, children = 2;
  int npoints = 10;
  std::uint64_t seed = 0;
  double target = std::numeric_limits<double>::infinity();
  bool include_root_edge = false, trajectory = false;
  int rc = 0;

  const char* metric_help = "metric for csv input (json files carry their own)";

  auto* cmd_mst = app.add_subcommand("mst", "minimum spanning tree of a point file");
  cmd_mst->add_option("file", in_path, "point file (.json or .csv)")->required();
  cmd_mst->add_option("--metric", metric_str, metric_help);
  cmd_mst->add_option("--out", out_path, "write result here instead of stdout");
  cmd_mst->callback([&] {
    Run run;
    run.command = "mst";
    run.out_path = out_path;
    run.flag("file", in_path);
    run.flag("--metric", metric_str);
    run.digest_file(in_path);
    const PointSet ps = read_point_file(in_path, metric_from_name(metric_str));
    if (ps.size() < 2)
      throw ValidationError("a spanning tree needs at least 2 points");
    run.deliver(tree_to_json(mst(ps)));
  });

  auto* cmd_exact = app.add_subcommand(
      "exact", "exact degree-bounded minimum bottleneck tree (n <= 14)");
  cmd_exact->add_option("file", in_path, "point file")->required();
  cmd_exact->add_option("--delta", delta, "degree bound (>= 2)")->required();
  cmd_exact->add_option("--metric", metric_str, metric_help);
  cmd_exact->add_option("--out", out_path, "write result here instead of stdout");
  cmd_exact->callback([&] {
    Run run;
    run.command = "exact";
    run.out_path = out_path;
    run.flag("file", in_path);
    run.flag("--delta", std::to_string(delta));
    run.flag("--metric", metric_str);
    run.digest_file(in_path);
    const PointSet ps = read_point_file(in_path, metric_from_name(metric_str));
    const ExactResult r = exact_dmbst(ps, delta);
    Json doc;
    doc["delta"] = delta;
    doc["bottleneck"] = r.bottleneck_value;
    doc["nodes_explored"] = r.node_count_explored;
    doc["tree"] = tree_to_json(r.witness_tree);
    run.deliver(doc);
  });

  auto* cmd_nkry = app.add_subcommand(
      "nkry", "degree-bounded rewiring of the MST (chain swap)");
  cmd_nkry->add_option("file", in_path, "point file")->required();
  cmd_nkry->add_option("--delta", delta, "degree bound (>= 3)")->required();
  cmd_nkry->add_option("--root", root, "root vertex (default 0)");
  cmd_nkry->add_flag("--order-includes-root-edge", include_root_edge,
                     "child ordering also counts the (root, first) edge");
  cmd_nkry->add_option("--metric", metric_str, metric_help);
  cmd_nkry->add_option("--out", out_path, "write result here instead of stdout");
  cmd_nkry->callback([&] {
    Run run;
    run.command = "nkry";
    run.out_path = out_path;
    run.flag("file", in_path);
    run.flag("--delta", std::to_string(delta));
    run.flag("--root", std::to_string(root));
    if (include_root_edge) run.flag("--order-includes-root-edge", "");
    run.flag("--metric", metric_str);
    run.digest_file(in_path);
    const PointSet ps = read_point_file(in_path, metric_from_name(metric_str));
    const ApproxResult r = nkry(ps, delta, root, include_root_edge);
    run.deliver(approx_to_json("nkry", delta, 0, root, r));
  });

  auto* cmd_pkry = app.add_subcommand(
      "pkry", "degree-bounded rewiring of the MST (partition swap)");
  cmd_pkry->add_option("file", in_path, "point file")->required();
  cmd_pkry->add_option("--delta", delta, "degree bound (>= 3)")->required();
  cmd_pkry->add_option("--k", kblocks, "blocks per swap (1 <= k <= delta-2)")
      ->required();
  cmd_pkry->add_option("--root", root, "root vertex (default 0)");
  cmd_pkry->add_option("--metric", metric_str, metric_help);
  cmd_pkry->add_option("--out", out_path, "write result here instead of stdout");
  cmd_pkry->callback([&] {
    Run run;
    run.command = "pkry";
    run.out_path = out_path;
    run.flag("file", in_path);
    run.flag("--delta", std::to_string(delta));
    run.flag("--k", std::to_string(kblocks));
    run.flag("--root", std::to_string(root));
    run.flag("--metric", metric_str);
    run.digest_file(in_path);
    const PointSet ps = read_point_file(in_path, metric_from_name(metric_str));
    const ApproxResult r = pkry(ps, delta, kblocks, root);
    run.deliver(approx_to_json("pkry", delta, kblocks, root, r));
  });

  auto* cmd_btsp = app.add_subcommand(
      "btsp", "exact bottleneck path from a start vertex through a set");
  cmd_btsp->add_option("file", in_path, "point file")->required();
  cmd_btsp->add_option("--start", start, "start vertex (default 0)");
  cmd_btsp->add_option("--visit", visit_str,
                       "comma-separated vertices (default: all others)");
  cmd_btsp->add_option("--metric", metric_str, metric_help);
  cmd_btsp->add_option("--out", out_path, "write result here instead of stdout");
  cmd_btsp->callback([&] {
    Run run;
    run.command = "btsp";
    run.out_path = out_path;
    run.flag("file", in_path);
    run.flag("--start", std::to_string(start));
    run.flag("--visit", visit_str);
    run.flag("--metric", metric_str);
    run.digest_file(in_path);
    const PointSet ps = read_point_file(in_path, metric_from_name(metric_str));
    std::vector<int> visit;
    if (visit_str.empty()) {
      for (int v = 0; v < ps.size(); ++v)
        if (v != start) visit.push_back(v);
    } else {
      visit = parse_int_list(visit_str);
    }
    const BottleneckPath bp = btsp_path(ps, start, visit);
    Json doc;
    doc["start"] = start;
    doc["order"] = bp.order;
    doc["bottleneck"] = bp.bottleneck_value;
    run.deliver(doc);
  });

  auto* cmd_search = app.add_subcommand(
      "search", "multistart hill climbing for worst-case stars");
  cmd_search->add_option("--metric", metric_str, "euclidean or rectilinear");
  cmd_search->add_option("--children", children, "number of children")
      ->required();
  cmd_search->add_option("--objective", objective_str, "nkry or pkry:<k>");
  cmd_search->add_option("--budget", budget_str,
                         "restarts x iterations (default 200x5000)");
  cmd_search->add_option("--seed", seed, "rng seed (default 0)");
  cmd_search->add_option("--target", target,
                         "stop once the running best reaches this value");
  cmd_search->add_option("--init", init_path,
                         "point file used as restart 0's starting children");
  cmd_search->add_flag("--trajectory", trajectory,
                       "record the running-best improvement curve");
  cmd_search->add_option("--out", out_path, "write report here instead of stdout");
  cmd_search->callback([&] {
    Run run;
    run.command = "search";
    run.out_path = out_path;
    run.seed = seed;
    run.flag("--metric", metric_str);
    run.flag("--children", std::to_string(children));
    run.flag("--objective", objective_str);
    run.flag("--budget", budget_str);
    run.flag("--seed", std::to_string(seed));
    if (std::isfinite(target)) run.flag("--target", format_sig(target));
    if (!init_path.empty()) run.flag("--init", init_path);
    if (trajectory) run.flag("--trajectory", "");
    const Metric m = metric_from_name(metric_str);
    const StarObjective obj = StarObjective::parse(objective_str);
    const SearchBudget budget = parse_budget(budget_str);
    SearchOptions opts;
    if (!init_path.empty()) {
      run.digest_file(init_path);
      const PointSet init = read_point_file(init_path, m);
      opts.init = StarConfig{init.points, init.metric};
    }
    opts.target = target;
    opts.record_trajectory = trajectory;
    const SearchReport rep = search(m, children, obj, budget, seed, opts);
    Json doc;
    doc["metric"] = metric_name(m);
    doc["children"] = children;
    doc["objective"] = obj.name();
    doc["seed"] = seed;
    Json budget_doc;
    budget_doc["restarts"] = budget.restarts;
    budget_doc["iters"] = budget.iters;
    doc["budget"] = std::move(budget_doc);
    doc["restarts_executed"] = rep.restarts;
    doc["best_value"] = rep.best_value;
    doc["best_config"] = point_set_to_json(
        PointSet(rep.best_config.children, rep.best_config.metric));
    if (trajectory) {
      Json curve = Json::array();
      for (const auto& [evals, value] : rep.trajectory)
        curve.push_back(Json::array({evals, value}));
      doc["trajectory"] = std::move(curve);
    }
    run.deliver(doc);
  });

  auto* cmd_verify = app.add_subcommand(
      "verify", "recompute every bundled configuration and compare");
  cmd_verify->add_option("--fixtures", fixtures_dir,
                         "fixture directory (default: bundled set, or "
                         "DMBST_FIXTURES)");
  cmd_verify->add_option("--name", fixture_name, "verify one fixture only");
  cmd_verify->callback([&] {
    const std::string dir =
        fixtures_dir.empty() ? bundled_fixture_dir() : fixtures_dir;
    std::vector<FixtureResult> results;
    if (fixture_name.empty()) {
      results = verify_all(dir);
      if (results.empty())
        throw ValidationError("no fixtures found in " + dir);
    } else {
      results.push_back(verify_fixture(find_fixture(dir, fixture_name)));
    }
    char line[160];
    std::snprintf(line, sizeof line, "%-22s %16s %12s %10s  %s\n", "fixture",
                  "recomputed", "value", "diff", "status");
    std::cout << line;
    int passed = 0;
    for (const FixtureResult& r : results) {
      std::string status = r.pass ? "PASS" : "FAIL";
      if (!r.feasible) status += " (separation)";
      if (!r.checks_ok) status += " (pair check)";
      std::snprintf(line, sizeof line, "%-22s %16.12g %12g %10.2e  %s\n",
                    r.name.c_str(), r.recomputed, r.paper_value,
                    std::abs(r.recomputed - r.paper_value), status.c_str());
      std::cout << line;
      if (r.pass) ++passed;
    }
    std::cout << passed << "/" << results.size() << " fixtures pass\n";
    if (passed != static_cast<int>(results.size())) rc = 1;
  });

  auto* cmd_gadget = app.add_subcommand(
      "gadget", "hardness-reduction instances from grid graphs");
  cmd_gadget->require_subcommand(1);
  auto add_gadget_flags = [&](CLI::App* sub) {
    sub->add_option("grid", grid_path, "grid file {\"vertices\": [[x,y],...]}")
        ->required();
    sub->add_option("--variant", variant_str, "e5, e4, r5, or r4");
    sub->add_option("--preset", preset_str, "cor35, thm36, or default");
    sub->add_option("--out", out_path, "write result here instead of stdout");
  };
  auto gadget_run = [&](const char* name) {
    Run run;
    run.command = std::string("gadget ") + name;
    run.out_path = out_path;
    run.flag("grid", grid_path);
    run.flag("--variant", variant_str);
    run.flag("--preset", preset_str);
    run.digest_file(grid_path);
    return run;
  };
  auto gadget_inputs = [&] {
    const GridGraph g(read_grid_file(grid_path));
    const GadgetParams p =
        GadgetParams::preset(preset_str, variant_from_name(variant_str));
    return std::make_pair(g, p);
  };

  auto* cmd_gbuild = cmd_gadget->add_subcommand(
      "build", "emit the pseudo-node point set for a grid");
  add_gadget_flags(cmd_gbuild);
  cmd_gbuild->callback([&] {
    Run run = gadget_run("build");
    const auto [g, p] = gadget_inputs();
    const GadgetInstance gi = build_gadget(g, p);
    Json doc = point_set_to_json(gi.points);
    Json roles = Json::array();
    for (const PointRole r : gi.roles) roles.push_back(role_name(r));
    doc["roles"] = std::move(roles);
    doc["host_of"] = gi.host_of;
    run.deliver(doc);
  });

  auto* cmd_gaudit = cmd_gadget->add_subcommand(
      "audit", "verify the distance-gap structure of a built gadget");
  add_gadget_flags(cmd_gaudit);
  cmd_gaudit->callback([&] {
    Run run = gadget_run("audit");
    const auto [g, p] = gadget_inputs();
    const GapReport rep = audit_gaps(build_gadget(g, p));
    Json doc;
    doc["variant"] = variant_str;
    doc["preset"] = preset_str;
    doc["host_pseudo_pairs"] = rep.host_pseudo_pairs;
    doc["max_host_pseudo"] = rep.max_host_pseudo;
    doc["unit_pairs"] = rep.unit_pairs;
    doc["gap_pairs"] = rep.gap_pairs;
    doc["min_gap"] = rep.min_gap;
    doc["required_threshold"] = rep.required_threshold;
    doc["rational_exact"] = rep.rational_exact;
    Json classes = Json::array();
    for (const GapClassStat& c : rep.classes) {
      Json entry;
      entry["name"] = c.name;
      entry["closed_form"] = c.closed_form;
      entry["min_distance"] = c.min_distance;
      entry["pair_count"] = c.pair_count;
      classes.push_back(std::move(entry));
    }
    doc["classes"] = std::move(classes);
    run.deliver(doc);
  });

  auto* cmd_gequiv = cmd_gadget->add_subcommand(
      "equiv", "bounded-tree feasibility at bottleneck 1 vs Hamiltonian path");
  add_gadget_flags(cmd_gequiv);
  cmd_gequiv->callback([&] {
    Run run = gadget_run("equiv");
    const auto [g, p] = gadget_inputs();
    const EquivalenceReport rep = equivalence_check(g, p);
    Json doc;
    doc["variant"] = variant_str;
    doc["preset"] = preset_str;
    doc["tree_feasible"] = rep.tree_feasible;
    doc["ham_path"] = rep.ham_path;
    doc["agree"] = rep.agree;
    doc["witness_weight"] = rep.witness_weight;
    doc["expected_weight"] = rep.expected_weight;
    doc["weight_matches"] = rep.weight_matches;
    run.deliver(doc);
  });

  auto* cmd_hampath = app.add_subcommand(
      "hampath", "Hamiltonian path decision on a grid graph (<= 12 vertices)");
  cmd_hampath->add_option("grid", grid_path, "grid file")->required();
  cmd_hampath->add_option("--out", out_path, "write result here instead of stdout");
  cmd_hampath->callback([&] {
    Run run;
    run.command = "hampath";
    run.out_path = out_path;
    run.flag("grid", grid_path);
    run.digest_file(grid_path);
    const GridGraph g(read_grid_file(grid_path));
    const HamPathResult r = hamiltonian_path_exists(g);
    Json doc;
    doc["exists"] = r.exists;
    doc["path"] = r.path;
    run.deliver(doc);
  });

  auto* cmd_bench = app.add_subcommand(
      "bench", "ratio/time table over a generated instance, as csv");
  cmd_bench->add_option("--generator", generator,
                        "uniform-cube, grid, or cluster");
  cmd_bench->add_option("--n", npoints, "instance size")->required();
  cmd_bench->add_option("--seed", seed, "rng seed (default 0)");
  cmd_bench->add_option("--metric", metric_str, "euclidean or rectilinear");
  cmd_bench->add_option("--deltas", deltas_str,
                        "degree bounds to sweep (default 3,4,5)");
  cmd_bench->add_option("--out", out_path, "write csv here instead of stdout");
  cmd_bench->callback([&] {
    Run run;
    run.command = "bench";
    run.out_path = out_path;
    run.seed = seed;
    run.flag("--generator", generator);
    run.flag("--n", std::to_string(npoints));
    run.flag("--seed", std::to_string(seed));
    run.flag("--metric", metric_str);
    run.flag("--deltas", deltas_str);
    const Metric m = metric_from_name(metric_str);
    const PointSet ps = generate_instance(generator, npoints, seed, m);
    run.input_digest = fnv1a64_hex(point_set_to_csv(ps));
    std::string csv = "algorithm,delta,k,n,ratio,ratio_vs,time_ms\n";
    for (const int d : parse_int_list(deltas_str)) {
      if (d < 3)
        throw ValidationError("bench sweeps need delta >= 3, got " +
                              std::to_string(d));
      double reference;
      const char* reference_label;
      if (ps.size() <= 14) {
        reference = exact_dmbst(ps, d).bottleneck_value;
        reference_label = "exact";
      } else {
        reference = bottleneck(mst(ps));
        reference_label = "mst";
      }
      auto row = [&](const char* algorithm, int k, double value,
                     double time_ms) {
        csv += algorithm;
        csv += ',' + std::to_string(d) + ',';
        if (k > 0) csv += std::to_string(k);
        csv += ',' + std::to_string(ps.size()) + ',';
        csv += format_sig(value / reference);
        csv += ',';
        csv += reference_label;
        char t[32];
        std::snprintf(t, sizeof t, ",%.3f\n", time_ms);
        csv += t;
      };
      Clock::time_point t0 = Clock::now();
      const ApproxResult rn = nkry(ps, d);
      row("nkry", 0, rn.bottleneck_value, ms_since(t0));
      for (int k = 1; k <= d - 2; ++k) {
        t0 = Clock::now();
        const ApproxResult rp = pkry(ps, d, k);
        row("pkry", k, rp.bottleneck_value, ms_since(t0));
      }
    }
    run.deliver(csv);
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  } catch (const ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const CapExceeded& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 1;
  }
  return rc;
}

}  // namespace dmbst

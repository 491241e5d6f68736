#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <string>
#include <vector>

#include "dmbst/errors.hpp"
#include "dmbst/fixtures.hpp"
#include "dmbst/geometry.hpp"
#include "dmbst/io.hpp"
#include "dmbst/rng.hpp"
#include "dmbst/spanning.hpp"
#include "doctest.h"
#include "test_support.hpp"

using namespace dmbst;

namespace {

namespace fs = std::filesystem;

struct TempDir {
  fs::path path;
  TempDir() {
    std::string templ =
        (fs::temp_directory_path() / "dmbst-test-XXXXXX").string();
    path = mkdtemp(templ.data());
  }
  ~TempDir() {
    std::error_code ec;
    fs::remove_all(path, ec);
  }
  std::string file(const std::string& name) const {
    return (path / name).string();
  }
};

int run_cli_command(const std::string& args) {
  const int status = std::system((std::string(DMBST_BIN) + " " + args +
                                  " > /dev/null 2> /dev/null")
                                     .c_str());
  return WEXITSTATUS(status);
}

std::string capture_cli(const std::string& args, int* exit_code = nullptr) {
  const TempDir tmp;
  const std::string out = tmp.file("stdout.txt");
  const int status = std::system(
      (std::string(DMBST_BIN) + " " + args + " > " + out + " 2> /dev/null")
          .c_str());
  if (exit_code != nullptr) *exit_code = WEXITSTATUS(status);
  return read_text_file(out);
}

}  // namespace

TEST_CASE("point documents round trip through json and csv") {
  Rng rng(800);
  for (const Metric metric : {Metric::euclidean, Metric::rectilinear}) {
    const PointSet ps = testsup::random_instance(rng, 9, metric, 3.0);
    const PointSet via_json = point_set_from_json(point_set_to_json(ps));
    CHECK(via_json.metric == metric);
    REQUIRE(via_json.size() == ps.size());
    for (int i = 0; i < ps.size(); ++i)
      CHECK(via_json.points[static_cast<std::size_t>(i)] ==
            ps.points[static_cast<std::size_t>(i)]);

    const PointSet via_csv = point_set_from_csv(point_set_to_csv(ps), metric);
    REQUIRE(via_csv.size() == ps.size());
    for (int i = 0; i < ps.size(); ++i) {
      const Point3 a = ps.points[static_cast<std::size_t>(i)];
      const Point3 b = via_csv.points[static_cast<std::size_t>(i)];
      CHECK(b.x == doctest::Approx(a.x).epsilon(1e-11));
      CHECK(b.y == doctest::Approx(a.y).epsilon(1e-11));
      CHECK(b.z == doctest::Approx(a.z).epsilon(1e-11));
    }
  }
}

TEST_CASE("csv parsing skips comments and rejects malformed rows") {
  const std::string text =
      "# header comment\n"
      "0,0,0\n"
      "\n"
      "1, 2.5, -3e-2\n";
  const PointSet ps = point_set_from_csv(text, Metric::euclidean);
  REQUIRE(ps.size() == 2);
  CHECK(ps.points[1] == Point3{1.0, 2.5, -0.03});
  CHECK_THROWS_AS(point_set_from_csv("1,2\n", Metric::euclidean),
                  ValidationError);
  CHECK_THROWS_AS(point_set_from_csv("1,2,3,4\n", Metric::euclidean),
                  ValidationError);
  CHECK_THROWS_AS(point_set_from_csv("a,b,c\n", Metric::euclidean),
                  ValidationError);
}

TEST_CASE("malformed point documents name the offending field") {
  CHECK_THROWS_AS(point_set_from_json(Json{{"points", Json::array()}}),
                  ValidationError);
  CHECK_THROWS_AS(
      point_set_from_json(Json{{"metric", "spherical"},
                               {"points", Json::array({{0, 0, 0}})}}),
      ValidationError);
  CHECK_THROWS_AS(
      point_set_from_json(Json{{"metric", "euclidean"},
                               {"points", Json::array({{0, 0}})}}),
      ValidationError);
}

TEST_CASE("emitted numbers are rounded to twelve significant digits") {
  Json doc;
  doc["value"] = 0.1234567890123456789;
  doc["nested"] = Json::array({1.0000000000004, 2.0});
  const Json rounded = round_numbers(doc);
  CHECK(rounded["value"].get<double>() == 0.123456789012);
  CHECK(rounded["nested"][0].get<double>() == 1.0);
  CHECK(rounded["nested"][1].get<double>() == 2.0);
  const std::string text = render_json(doc);
  CHECK(text.find("0.123456789012") != std::string::npos);
  CHECK(text.back() == '\n');
}

TEST_CASE("tree documents list edges in child order with the summary stats") {
  Rng rng(801);
  const PointSet ps = testsup::random_instance(rng, 6, Metric::euclidean);
  const Tree t = mst(ps);
  const Json doc = tree_to_json(t);
  CHECK(doc["root"].get<int>() == t.root);
  CHECK(doc["bottleneck"].get<double>() ==
        doctest::Approx(bottleneck(t)).epsilon(1e-11));
  CHECK(doc["max_degree"].get<int>() == max_degree(t));
  REQUIRE(doc["edges"].size() == 5);
  int prev_child = -1;
  for (const auto& edge : doc["edges"]) {
    REQUIRE(edge.size() == 3);
    const int parent = edge[0].get<int>();
    const int child = edge[1].get<int>();
    CHECK(t.parent[static_cast<std::size_t>(child)] == parent);
    CHECK(child > prev_child);
    prev_child = child;
  }
}

TEST_CASE("grid documents require integer cells") {
  const Json good{{"vertices", Json::array({{0, 0}, {1, 0}})}};
  const auto cells = grid_vertices_from_json(good);
  CHECK(cells == std::vector<std::pair<int, int>>{{0, 0}, {1, 0}});
  CHECK_THROWS_AS(
      grid_vertices_from_json(Json{{"vertices", Json::array({{0.5, 0}})}}),
      ValidationError);
  CHECK_THROWS_AS(grid_vertices_from_json(Json::object()), ValidationError);
}

TEST_CASE("the fnv1a digest matches its published test vectors") {
  CHECK(fnv1a64_hex("") == "cbf29ce484222325");
  CHECK(fnv1a64_hex("hello") == "a430d84680aabd0b");
  CHECK(fnv1a64_hex("hello") == fnv1a64_hex("hello"));
  CHECK(fnv1a64_hex("hello") != fnv1a64_hex("hellp"));
}

TEST_CASE("every bundled fixture loads and passes verification") {
  const std::string dir = bundled_fixture_dir();
  const auto files = list_fixture_files(dir);
  CHECK(files.size() == 21);
  const auto results = verify_all(dir);
  REQUIRE(results.size() == files.size());
  for (const auto& r : results) {
    CAPTURE(r.name);
    CHECK(r.feasible);
    CHECK(r.value_ok);
    CHECK(r.checks_ok);
    CHECK(r.pass);
  }
  CHECK_THROWS_AS(find_fixture(dir, "made-up-name"), ValidationError);
}

TEST_CASE("fixture parsing validates fields and check indices") {
  Json doc;
  doc["name"] = "bad";
  doc["metric"] = "euclidean";
  doc["points"] = Json::array({{1, 0, 0}, {-1, 0, 0}});
  doc["objective"] = "nkry";
  doc["paper_value"] = 2.0;
  doc["paper_ref"] = "somewhere";
  CHECK_NOTHROW(fixture_from_json(doc));
  Json missing = doc;
  missing.erase("paper_value");
  CHECK_THROWS_AS(fixture_from_json(missing), ValidationError);
  Json bad_check = doc;
  bad_check["checks"] = Json::array(
      {Json{{"i", 0}, {"j", 5}, {"value", 1.0}}});
  CHECK_THROWS_AS(fixture_from_json(bad_check), ValidationError);
}

TEST_CASE("the command line runs every subcommand end to end") {
  const TempDir tmp;
  Rng rng(802);
  const PointSet ps = testsup::random_instance(rng, 10, Metric::euclidean);
  const std::string input = tmp.file("points.json");
  write_text_file(input, render_json(point_set_to_json(ps)));

  SUBCASE("mst prints a tree document") {
    int code = -1;
    const std::string out = capture_cli("mst " + input, &code);
    CHECK(code == 0);
    const Json doc = Json::parse(out);
    CHECK(doc["edges"].size() == 9);
  }

  SUBCASE("exact and approximations agree on the bound") {
    int code = -1;
    const std::string exact_out =
        capture_cli("exact " + input + " --delta 3", &code);
    CHECK(code == 0);
    const Json exact_doc = Json::parse(exact_out);
    const std::string nkry_out =
        capture_cli("nkry " + input + " --delta 3", &code);
    CHECK(code == 0);
    const Json nkry_doc = Json::parse(nkry_out);
    CHECK(nkry_doc["bottleneck"].get<double>() >=
          exact_doc["bottleneck"].get<double>() - 1e-9);
    CHECK(nkry_doc["tree"]["max_degree"].get<int>() <= 3);
  }

  SUBCASE("btsp reports an order over the requested visit set") {
    int code = -1;
    const std::string out =
        capture_cli("btsp " + input + " --start 0 --visit 3,4,5", &code);
    CHECK(code == 0);
    const Json doc = Json::parse(out);
    CHECK(doc["order"].size() == 4);
    CHECK(doc["order"][0].get<int>() == 0);
  }

  SUBCASE("verify reports a passing fixture table") {
    int code = -1;
    const std::string out = capture_cli(
        "verify --fixtures " + bundled_fixture_dir(), &code);
    CHECK(code == 0);
    CHECK(out.find("21/21 fixtures pass") != std::string::npos);
  }

  SUBCASE("bad arguments exit with the validation code") {
    CHECK(run_cli_command("mst " + input + " --metric spherical") == 2);
    CHECK(run_cli_command("nkry " + input + " --delta 2") == 2);
    CHECK(run_cli_command("exact " + input + " --delta 0") == 2);
    CHECK(run_cli_command("mst " + tmp.file("missing.json")) == 2);
  }

  SUBCASE("cap violations exit with the cap code") {
    Rng big_rng(803);
    const PointSet big =
        testsup::random_instance(big_rng, 16, Metric::euclidean);
    const std::string big_input = tmp.file("big.json");
    write_text_file(big_input, render_json(point_set_to_json(big)));
    CHECK(run_cli_command("exact " + big_input + " --delta 3") == 3);
  }
}

TEST_CASE("a manifest replay reproduces the output byte for byte") {
  const TempDir tmp;
  Rng rng(804);
  const PointSet ps = testsup::random_instance(rng, 8, Metric::euclidean);
  const std::string input = tmp.file("points.json");
  write_text_file(input, render_json(point_set_to_json(ps)));
  const std::string out = tmp.file("tree.json");

  REQUIRE(run_cli_command("nkry " + input + " --delta 4 --out " + out) == 0);
  const std::string first = read_text_file(out);
  const Json manifest = Json::parse(read_text_file(out + ".manifest.json"));
  CHECK(manifest["command"].get<std::string>() == "nkry");
  CHECK(manifest["seed"].get<std::uint64_t>() == 0);
  CHECK(manifest["input_digest"].get<std::string>() ==
        fnv1a64_hex(read_text_file(input)));
  CHECK(manifest["outputs"].size() == 1);
  CHECK(manifest["wall_ms"].get<double>() >= 0.0);

  std::string replay = std::string(DMBST_BIN) + " " +
                       manifest["command"].get<std::string>();
  for (const auto& [key, value] : manifest["flags"].items()) {
    if (key.rfind("--", 0) == 0) {
      replay += " " + key;
      if (!value.get<std::string>().empty())
        replay += " " + value.get<std::string>();
    } else {
      replay += " " + value.get<std::string>();
    }
  }
  replay += " --out " + out;
  REQUIRE(WEXITSTATUS(std::system((replay + " > /dev/null").c_str())) == 0);
  CHECK(read_text_file(out) == first);
}

TEST_CASE("search and bench runs are reproducible from the command line") {
  const TempDir tmp;

  SUBCASE("search emits the best star it found") {
    int code = -1;
    const std::string out = capture_cli(
        "search --metric euclidean --children 3 --objective nkry "
        "--budget 6x400 --seed 5",
        &code);
    CHECK(code == 0);
    const Json doc = Json::parse(out);
    CHECK(doc["children"].get<int>() == 3);
    CHECK(doc["best_value"].get<double>() > 1.0);
    CHECK(doc["best_config"]["points"].size() == 3);
    const std::string again = capture_cli(
        "search --metric euclidean --children 3 --objective nkry "
        "--budget 6x400 --seed 5",
        &code);
    CHECK(again == out);
  }

  SUBCASE("search accepts a warm start file") {
    const Fixture f =
        find_fixture(bundled_fixture_dir(), "rect13-octahedron");
    PointSet init;
    init.metric = f.config.metric;
    init.points = f.config.children;
    const std::string init_path = tmp.file("init.json");
    write_text_file(init_path, render_json(point_set_to_json(init)));
    int code = -1;
    const std::string out = capture_cli(
        "search --metric rectilinear --children 13 --objective nkry "
        "--budget 1x300 --seed 1 --init " +
            init_path,
        &code);
    CHECK(code == 0);
    const Json doc = Json::parse(out);
    CHECK(doc["best_value"].get<double>() == 2.0);
  }

  SUBCASE("bench emits a stable csv apart from the timing column") {
    const std::string out = tmp.file("bench.csv");
    REQUIRE(run_cli_command("bench --generator uniform-cube --n 10 --seed 1 "
                            "--deltas 3,4 --out " +
                            out) == 0);
    const std::string first = read_text_file(out);
    CHECK(first.find("algorithm,delta,k,n,ratio,ratio_vs,time_ms") == 0);
    REQUIRE(run_cli_command("bench --generator uniform-cube --n 10 --seed 1 "
                            "--deltas 3,4 --out " +
                            out) == 0);
    const std::string second = read_text_file(out);
    auto strip_timing = [](const std::string& text) {
      std::string kept;
      for (std::size_t pos = 0; pos < text.size();) {
        std::size_t eol = text.find('\n', pos);
        if (eol == std::string::npos) eol = text.size();
        const std::string line = text.substr(pos, eol - pos);
        kept += line.substr(0, line.rfind(','));
        kept += '\n';
        pos = eol + 1;
      }
      return kept;
    };
    CHECK(strip_timing(first) == strip_timing(second));

    for (const std::string& line : {std::string("nkry,3,"), std::string("pkry,3,1")}) {
      CHECK(first.find(line) != std::string::npos);
    }
  }
}

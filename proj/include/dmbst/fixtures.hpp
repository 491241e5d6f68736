#pragma once

#include <string>
#include <vector>

#include "dmbst/io.hpp"
#include "dmbst/starsearch.hpp"

namespace dmbst {

/// Optional spot check on one pairwise distance of a fixture (e.g. an edge
/// length quoted in a figure caption).
struct PairCheck {
  int i = 0;
  int j = 0;
  double value = 0.0;
  double tolerance = 1e-3;
};

/// A published worst-case star: children coordinates exactly as printed,
/// the objective they were reported under, and the reported value.
struct Fixture {
  std::string name;
  StarConfig config;
  StarObjective objective;
  double paper_value = 0.0;
  std::string paper_ref;
  double tolerance = 1e-3;
  std::vector<PairCheck> checks;
};

/// Parses {"name", "metric", "points", "objective", "paper_value",
/// "paper_ref", optional "tolerance" (default 1e-3), optional "checks":
/// [{"i","j","value","tolerance"}]}. Points are the children; the star
/// center is the implicit origin.
Fixture fixture_from_json(const Json& doc);
Fixture load_fixture(const std::string& path);

/// Bundled fixture directory: the DMBST_FIXTURES environment variable when
/// set, otherwise the compiled-in data path.
std::string bundled_fixture_dir();

/// Sorted .json paths under dir.
std::vector<std::string> list_fixture_files(const std::string& dir);

/// Loads the bundled fixture with the given name (file stem or embedded
/// name field); throws ValidationError when unknown.
Fixture find_fixture(const std::string& dir, const std::string& name);

struct FixtureResult {
  std::string name;
  double recomputed = 0.0;
  double paper_value = 0.0;
  double tolerance = 0.0;
  bool feasible = false;
  bool value_ok = false;
  bool checks_ok = false;
  bool pass = false;
};

/// Recomputes the objective on the verbatim coordinates, checks surface and
/// separation feasibility with rounding slack 2e-3 (published tables carry
/// five significant figures), and runs the fixture's pair checks.
FixtureResult verify_fixture(const Fixture& f);

std::vector<FixtureResult> verify_all(const std::string& dir);

}  // namespace dmbst

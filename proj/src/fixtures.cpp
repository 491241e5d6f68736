#include "dmbst/fixtures.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <filesystem>

#include "dmbst/errors.hpp"

namespace dmbst {

namespace {

double number_field(const Json& doc, const char* key) {
  if (!doc.contains(key) || !doc[key].is_number())
    throw ValidationError(std::string("fixture: missing numeric field '") +
                          key + "'");
  return doc[key].get<double>();
}

std::string string_field(const Json& doc, const char* key) {
  if (!doc.contains(key) || !doc[key].is_string())
    throw ValidationError(std::string("fixture: missing string field '") +
                          key + "'");
  return doc[key].get<std::string>();
}

}  // namespace

Fixture fixture_from_json(const Json& doc) {
  Fixture f;
  f.name = string_field(doc, "name");
  const PointSet ps = point_set_from_json(doc);
  f.config.children = ps.points;
  f.config.metric = ps.metric;
  f.objective = StarObjective::parse(string_field(doc, "objective"));
  f.paper_value = number_field(doc, "paper_value");
  f.paper_ref = string_field(doc, "paper_ref");
  f.tolerance = doc.contains("tolerance") ? number_field(doc, "tolerance")
                                          : 1e-3;
  if (doc.contains("checks")) {
    if (!doc["checks"].is_array())
      throw ValidationError("fixture: checks must be an array");
    for (const Json& c : doc["checks"]) {
      PairCheck pc;
      pc.i = static_cast<int>(number_field(c, "i"));
      pc.j = static_cast<int>(number_field(c, "j"));
      pc.value = number_field(c, "value");
      pc.tolerance = c.contains("tolerance")
                         ? number_field(c, "tolerance")
                         : 1e-3;
      const int n = static_cast<int>(f.config.children.size());
      if (pc.i < 0 || pc.j < 0 || pc.i >= n || pc.j >= n || pc.i == pc.j)
        throw ValidationError("fixture: check indices out of range");
      f.checks.push_back(pc);
    }
  }
  return f;
}

Fixture load_fixture(const std::string& path) {
  Json doc;
  try {
    doc = Json::parse(read_text_file(path));
  } catch (const nlohmann::json::parse_error& e) {
    throw ValidationError(path + ": " + e.what());
  }
  try {
    return fixture_from_json(doc);
  } catch (const ValidationError& e) {
    throw ValidationError(path + ": " + e.what());
  }
}

std::string bundled_fixture_dir() {
  if (const char* env = std::getenv("DMBST_FIXTURES"))
    if (*env) return env;
  return DMBST_FIXTURE_DIR;
}

std::vector<std::string> list_fixture_files(const std::string& dir) {
  namespace fs = std::filesystem;
  std::vector<std::string> out;
  std::error_code ec;
  for (const auto& entry : fs::directory_iterator(dir, ec)) {
    if (entry.is_regular_file() && entry.path().extension() == ".json")
      out.push_back(entry.path().string());
  }
  if (ec)
    throw ValidationError("cannot list fixture directory '" + dir +
                          "': " + ec.message());
  std::sort(out.begin(), out.end());
  return out;
}

Fixture find_fixture(const std::string& dir, const std::string& name) {
  namespace fs = std::filesystem;
  for (const std::string& path : list_fixture_files(dir)) {
    if (fs::path(path).stem().string() == name) return load_fixture(path);
  }
  // Fall back to the embedded name field in case a file was renamed.
  for (const std::string& path : list_fixture_files(dir)) {
    Fixture f = load_fixture(path);
    if (f.name == name) return f;
  }
  throw ValidationError("unknown fixture '" + name + "' in " + dir);
}

FixtureResult verify_fixture(const Fixture& f) {
  FixtureResult r;
  r.name = f.name;
  r.paper_value = f.paper_value;
  r.tolerance = f.tolerance;
  try {
    f.config.validate(2e-3, 2e-3);
    r.feasible = true;
  } catch (const ValidationError&) {
    r.feasible = false;
  }
  r.recomputed = objective(f.config, f.objective);
  r.value_ok = std::abs(r.recomputed - f.paper_value) <= f.tolerance;
  r.checks_ok = true;
  for (const PairCheck& c : f.checks) {
    const double d = distance(f.config.children[c.i], f.config.children[c.j],
                              f.config.metric);
    if (std::abs(d - c.value) > c.tolerance) r.checks_ok = false;
  }
  r.pass = r.feasible && r.value_ok && r.checks_ok;
  return r;
}

std::vector<FixtureResult> verify_all(const std::string& dir) {
  std::vector<FixtureResult> out;
  for (const std::string& path : list_fixture_files(dir))
    out.push_back(verify_fixture(load_fixture(path)));
  return out;
}

}  // namespace dmbst

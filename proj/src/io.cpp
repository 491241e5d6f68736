#include "dmbst/io.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "dmbst/errors.hpp"
#include "dmbst/version.hpp"

namespace dmbst {

namespace {

double parse_number(const std::string& text, const std::string& where) {
  char* end = nullptr;
  const double v = std::strtod(text.c_str(), &end);
  if (end == text.c_str() || end != text.c_str() + text.size())
    throw ValidationError(where + ": '" + text + "' is not a number");
  return v;
}

double round12(double v) {
  if (!std::isfinite(v)) return v;
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return std::strtod(buf, nullptr);
}

std::string format12(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

Json parse_json_text(const std::string& text, const std::string& path) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ValidationError(path + ": " + e.what());
  }
}

}  // namespace

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("cannot open '" + path + "' for reading");
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) throw ValidationError("read error on '" + path + "'");
  return buf.str();
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ValidationError("cannot open '" + path + "' for writing");
  out << text;
  out.flush();
  if (!out) throw ValidationError("write error on '" + path + "'");
}

PointSet point_set_from_json(const Json& doc) {
  if (!doc.is_object() || !doc.contains("metric") || !doc.contains("points"))
    throw ValidationError(
        "point document must be {\"metric\": ..., \"points\": ...}");
  if (!doc["metric"].is_string())
    throw ValidationError("point document: metric must be a string");
  const Metric m = metric_from_name(doc["metric"].get<std::string>());
  const Json& arr = doc["points"];
  if (!arr.is_array())
    throw ValidationError("point document: points must be an array");
  std::vector<Point3> pts;
  pts.reserve(arr.size());
  for (const Json& row : arr) {
    if (!row.is_array() || row.size() != 3 || !row[0].is_number() ||
        !row[1].is_number() || !row[2].is_number())
      throw ValidationError(
          "point document: each point must be an [x, y, z] number triple");
    pts.push_back({row[0].get<double>(), row[1].get<double>(),
                   row[2].get<double>()});
  }
  return PointSet(std::move(pts), m);
}

Json point_set_to_json(const PointSet& ps) {
  Json doc;
  doc["metric"] = metric_name(ps.metric);
  Json arr = Json::array();
  for (const Point3& p : ps.points) arr.push_back(Json::array({p.x, p.y, p.z}));
  doc["points"] = std::move(arr);
  return doc;
}

PointSet read_point_file(const std::string& path, Metric csv_metric) {
  const std::string text = read_text_file(path);
  if (path.size() >= 4 && path.compare(path.size() - 4, 4, ".csv") == 0)
    return point_set_from_csv(text, csv_metric);
  return point_set_from_json(parse_json_text(text, path));
}

PointSet point_set_from_csv(const std::string& text, Metric m) {
  std::vector<Point3> pts;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::string trimmed = line;
    trimmed.erase(0, trimmed.find_first_not_of(" \t"));
    if (trimmed.empty() || trimmed[0] == '#') continue;
    std::istringstream cells(trimmed);
    std::string cell;
    double coords[3];
    int got = 0;
    while (std::getline(cells, cell, ',')) {
      if (got == 3)
        throw ValidationError("csv line " + std::to_string(lineno) +
                              ": expected 3 fields");
      cell.erase(0, cell.find_first_not_of(" \t"));
      cell.erase(cell.find_last_not_of(" \t") + 1);
      coords[got++] =
          parse_number(cell, "csv line " + std::to_string(lineno));
    }
    if (got != 3)
      throw ValidationError("csv line " + std::to_string(lineno) +
                            ": expected 3 fields");
    pts.push_back({coords[0], coords[1], coords[2]});
  }
  return PointSet(std::move(pts), m);
}

std::string point_set_to_csv(const PointSet& ps) {
  std::string out;
  for (const Point3& p : ps.points) {
    out += format12(p.x);
    out += ',';
    out += format12(p.y);
    out += ',';
    out += format12(p.z);
    out += '\n';
  }
  return out;
}

Json tree_to_json(const Tree& t) {
  Json doc;
  doc["root"] = t.root;
  Json edges = Json::array();
  for (int v = 0; v < t.size(); ++v)
    if (t.parent[v] >= 0)
      edges.push_back(Json::array({t.parent[v], v, t.edge_length[v]}));
  doc["edges"] = std::move(edges);
  doc["bottleneck"] = bottleneck(t);
  doc["max_degree"] = max_degree(t);
  return doc;
}

std::vector<std::pair<int, int>> grid_vertices_from_json(const Json& doc) {
  if (!doc.is_object() || !doc.contains("vertices") ||
      !doc["vertices"].is_array())
    throw ValidationError("grid document must be {\"vertices\": [[x,y],...]}");
  std::vector<std::pair<int, int>> out;
  for (const Json& row : doc["vertices"]) {
    if (!row.is_array() || row.size() != 2 ||
        !row[0].is_number_integer() || !row[1].is_number_integer())
      throw ValidationError(
          "grid document: each vertex must be an [x, y] integer pair");
    out.emplace_back(row[0].get<int>(), row[1].get<int>());
  }
  return out;
}

std::vector<std::pair<int, int>> read_grid_file(const std::string& path) {
  return grid_vertices_from_json(parse_json_text(read_text_file(path), path));
}

Json round_numbers(const Json& doc) {
  if (doc.is_number_float()) return round12(doc.get<double>());
  if (doc.is_array()) {
    Json out = Json::array();
    for (const Json& e : doc) out.push_back(round_numbers(e));
    return out;
  }
  if (doc.is_object()) {
    Json out = Json::object();
    for (const auto& item : doc.items()) out[item.key()] = round_numbers(item.value());
    return out;
  }
  return doc;
}

std::string render_json(const Json& doc) {
  return round_numbers(doc).dump(2) + "\n";
}

std::string fnv1a64_hex(const std::string& bytes) {
  std::uint64_t h = 14695981039346656037ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx",
                static_cast<unsigned long long>(h));
  return buf;
}

Json manifest_to_json(const RunManifest& m) {
  Json doc;
  doc["command"] = m.command;
  Json flags = Json::object();
  for (const auto& [key, value] : m.flags) flags[key] = value;
  doc["flags"] = std::move(flags);
  doc["seed"] = m.seed;
  doc["input_digest"] = m.input_digest;
  doc["outputs"] = m.outputs;
  doc["wall_ms"] = m.wall_ms;
  doc["artifact_version"] = artifact_version;
  return doc;
}

}  // namespace dmbst

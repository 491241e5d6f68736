#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

#include "dmbst/geometry.hpp"
#include "dmbst/spanning.hpp"

namespace dmbst {

/// All emitted documents use insertion-ordered objects so fields appear in
/// the documented schema order.
using Json = nlohmann::ordered_json;

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

/// Parses the point document {"metric": "euclidean"|"rectilinear",
/// "points": [[x,y,z],...]}.
PointSet point_set_from_json(const Json& doc);
Json point_set_to_json(const PointSet& ps);

/// Reads a point file, dispatching on extension: ".csv" expects one "x,y,z"
/// row per point with the metric supplied by the caller; anything else is
/// parsed as the JSON document above (which carries its own metric).
PointSet read_point_file(const std::string& path, Metric csv_metric);

PointSet point_set_from_csv(const std::string& text, Metric m);
std::string point_set_to_csv(const PointSet& ps);

/// Tree document {"root", "edges" as [parent, child, length] rows in child
/// index order, "bottleneck", "max_degree"}.
Json tree_to_json(const Tree& t);

/// Grid vertex list from {"vertices": [[x,y],...]}; coordinates must be
/// integers.
std::vector<std::pair<int, int>> grid_vertices_from_json(const Json& doc);
std::vector<std::pair<int, int>> read_grid_file(const std::string& path);

/// Returns a copy with every floating-point number rounded to 12
/// significant digits, recursively. Applied to every emitted document so
/// reruns and cross-language readers see identical bytes.
Json round_numbers(const Json& doc);

/// Canonical serialization: rounded numbers, two-space indent, trailing
/// newline.
std::string render_json(const Json& doc);

/// FNV-1a 64-bit digest of a byte string, as 16 hex characters.
std::string fnv1a64_hex(const std::string& bytes);

/// Reproduction record written next to each --out file.
struct RunManifest {
  std::string command;
  std::vector<std::pair<std::string, std::string>> flags;
  std::uint64_t seed = 0;
  std::string input_digest;
  std::vector<std::string> outputs;
  double wall_ms = 0.0;
};

Json manifest_to_json(const RunManifest& m);

}  // namespace dmbst

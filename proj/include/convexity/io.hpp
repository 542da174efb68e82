#pragma once

#include <string>

#include "convexity/geometry.hpp"

namespace convexity {

// Round-trip-exact decimal formatting (17 significant digits, scientific,
// locale independent). Used for every number this project writes.
std::string format_double(double v);

// Polygon JSON: {"dim": 2, "vertices": [[x, y], ...]}, implicitly closed.
PolygonBoundary read_polygon_json(const std::string& path);
PolygonBoundary parse_polygon_json(const std::string& text);
std::string polygon_to_json(const PolygonBoundary& shape);
void write_polygon_json(const std::string& path, const PolygonBoundary& shape);

// Wavefront OBJ subset: `v` and `f` lines only, triangles only, 1-based
// indices. Anything else is rejected with a ValidationError.
TriangleMeshBoundary read_mesh_obj(const std::string& path);
TriangleMeshBoundary parse_mesh_obj(const std::string& text);
std::string mesh_to_obj(const TriangleMeshBoundary& shape);
void write_mesh_obj(const std::string& path, const TriangleMeshBoundary& shape);

// True if the path names a mesh file (".obj" extension, case-insensitive).
bool is_mesh_path(const std::string& path);

} // namespace convexity

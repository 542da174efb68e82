#pragma once

#include <array>
#include <cstddef>
#include <memory>
#include <type_traits>
#include <vector>

#include "convexity/vec.hpp"

namespace convexity {

// One flat boundary patch: centroid, outward unit normal, and its
// (N-1)-dimensional measure (edge length / triangle area).
template <std::size_t N>
struct BoundaryElement {
    Vec<N> centroid;
    Vec<N> normal;
    double measure = 0.0;
};

// Simple closed CCW polygon in the plane. Validated at construction:
// >= 3 vertices, no degenerate edges, no self-intersections, positive signed
// area (clockwise input is reversed automatically).
class PolygonBoundary {
public:
    static PolygonBoundary from_vertices(std::vector<Vec2> vertices);

    const std::vector<Vec2>& vertices() const { return vertices_; }
    std::size_t size() const { return vertices_.size(); }

    double perimeter() const { return perimeter_; }
    double signed_area() const { return signed_area_; }
    // Bounding-box diagonal; the scale used by tolerance-based predicates.
    double diameter() const { return diameter_; }

private:
    PolygonBoundary() = default;

    std::vector<Vec2> vertices_;
    double perimeter_ = 0.0;
    double signed_area_ = 0.0;
    double diameter_ = 0.0;
};

// Closed watertight triangle mesh with consistent outward orientation
// (positive enclosed volume). Indices are 0-based internally.
class TriangleMeshBoundary {
public:
    enum class Projection { none, unit_sphere };

    static TriangleMeshBoundary from_data(std::vector<Vec3> vertices,
                                          std::vector<std::array<int, 3>> triangles,
                                          Projection projection = Projection::none);

    const std::vector<Vec3>& vertices() const { return vertices_; }
    const std::vector<std::array<int, 3>>& triangles() const { return triangles_; }
    Projection projection() const { return projection_; }

    double total_area() const { return total_area_; }
    double volume() const { return volume_; }
    double diameter() const { return diameter_; }

private:
    TriangleMeshBoundary() = default;

    std::vector<Vec3> vertices_;
    std::vector<std::array<int, 3>> triangles_;
    Projection projection_ = Projection::none;
    double total_area_ = 0.0;
    double volume_ = 0.0;
    double diameter_ = 0.0;
};

// The discretized boundary: one flat element per edge/triangle, plus the
// source shape it came from (kept for line-intersection cross checks).
template <std::size_t N>
struct DiscreteBoundary {
    using Source = std::conditional_t<N == 2, PolygonBoundary, TriangleMeshBoundary>;

    std::vector<BoundaryElement<N>> elements;
    double total_measure = 0.0;
    double shape_diameter = 0.0;
    double max_element_diameter = 0.0;
    std::shared_ptr<const Source> source; // may be null for hand-built boundaries

    static DiscreteBoundary from_elements(std::vector<BoundaryElement<N>> elements);
};

enum class ShapeKind { circle, ellipse, star, kidney, square };

// Parameters for make_shape; each kind reads only the fields it needs.
struct ShapeParams {
    double radius = 1.0;            // circle
    double a = 2.0, b = 1.0;        // ellipse semi-axes
    double outer = 1.0, inner = 0.4; // star radii
    int points = 5;                 // star points
    double side = 2.0;              // square side length
};

PolygonBoundary make_polygon(const std::vector<Vec2>& vertices);
PolygonBoundary make_shape(ShapeKind kind, int resolution, const ShapeParams& params = {});
TriangleMeshBoundary make_sphere_mesh(int subdivisions);

DiscreteBoundary<2> discretize(const PolygonBoundary& shape);
DiscreteBoundary<3> discretize(const TriangleMeshBoundary& shape);

// Splits every edge into `factor` equal parts; exactly measure-preserving.
PolygonBoundary refine(const PolygonBoundary& shape, int factor);
// 4-way midpoint subdivision, ceil(log2(factor)) passes; sphere-tagged meshes
// re-project new vertices onto the unit sphere.
TriangleMeshBoundary refine(const TriangleMeshBoundary& shape, int factor);

bool is_convex_oracle(const PolygonBoundary& shape);
bool is_convex_oracle(const TriangleMeshBoundary& shape);

// Convex hull of the polygon's vertices (monotone chain), returned CCW.
PolygonBoundary convex_hull(const PolygonBoundary& shape);

// Winding-parity point containment; true for strictly interior points.
bool point_inside(const PolygonBoundary& shape, const Vec2& p);
bool point_inside(const TriangleMeshBoundary& shape, const Vec3& p);

} // namespace convexity

#include "convexity/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>
#include <unordered_map>

#include "convexity/errors.hpp"
#include "convexity/predicates.hpp"

namespace convexity {

namespace {

constexpr double kPi = std::numbers::pi;

// Fixed kidney parametrization: dimpled limacon r(t) = a + b cos t.
// b/a in (1/2, 1) gives a smooth, simple, nonconvex curve; b = 0.9 puts the
// convexity defect comfortably away from discretization noise.
constexpr double kKidneyA = 1.0;
constexpr double kKidneyB = 0.9;

double bbox_diagonal(const std::vector<Vec2>& pts) {
    double lo[2] = {pts[0].x(), pts[0].y()};
    double hi[2] = {pts[0].x(), pts[0].y()};
    for (const auto& p : pts) {
        for (int k = 0; k < 2; ++k) {
            lo[k] = std::min(lo[k], p[k]);
            hi[k] = std::max(hi[k], p[k]);
        }
    }
    return std::hypot(hi[0] - lo[0], hi[1] - lo[1]);
}

double bbox_diagonal(const std::vector<Vec3>& pts) {
    double lo[3] = {pts[0].x(), pts[0].y(), pts[0].z()};
    double hi[3] = {pts[0].x(), pts[0].y(), pts[0].z()};
    for (const auto& p : pts) {
        for (int k = 0; k < 3; ++k) {
            lo[k] = std::min(lo[k], p[k]);
            hi[k] = std::max(hi[k], p[k]);
        }
    }
    return std::sqrt((hi[0] - lo[0]) * (hi[0] - lo[0]) + (hi[1] - lo[1]) * (hi[1] - lo[1]) +
                     (hi[2] - lo[2]) * (hi[2] - lo[2]));
}

double orient(const Vec2& p, const Vec2& q, const Vec2& r) {
    return cross(q - p, r - p);
}

bool on_segment_collinear(const Vec2& a, const Vec2& b, const Vec2& p) {
    return std::min(a.x(), b.x()) <= p.x() && p.x() <= std::max(a.x(), b.x()) &&
           std::min(a.y(), b.y()) <= p.y() && p.y() <= std::max(a.y(), b.y());
}

// Any contact between two segments, proper crossings and touching alike.
// Orientation values within `tol` of zero are treated as collinear so that
// exactly-collinear subdivided edges do not trip on rounding noise.
bool segments_intersect(const Vec2& a, const Vec2& b, const Vec2& c, const Vec2& d, double tol) {
    auto snapped = [tol](double o) { return (o <= tol && o >= -tol) ? 0.0 : o; };
    double o1 = snapped(orient(a, b, c));
    double o2 = snapped(orient(a, b, d));
    double o3 = snapped(orient(c, d, a));
    double o4 = snapped(orient(c, d, b));
    if (((o1 > 0 && o2 < 0) || (o1 < 0 && o2 > 0)) &&
        ((o3 > 0 && o4 < 0) || (o3 < 0 && o4 > 0)))
        return true;
    if (o1 == 0 && on_segment_collinear(a, b, c)) return true;
    if (o2 == 0 && on_segment_collinear(a, b, d)) return true;
    if (o3 == 0 && on_segment_collinear(c, d, a)) return true;
    if (o4 == 0 && on_segment_collinear(c, d, b)) return true;
    return false;
}

void check_simple(const std::vector<Vec2>& v, double diameter) {
    const std::size_t n = v.size();
    const double tol = 1e-12 * diameter * diameter;
    for (std::size_t i = 0; i < n; ++i) {
        const Vec2& a = v[i];
        const Vec2& b = v[(i + 1) % n];
        for (std::size_t j = i + 2; j < n; ++j) {
            if (i == 0 && j == n - 1) continue; // adjacent around the seam
            const Vec2& c = v[j];
            const Vec2& d = v[(j + 1) % n];
            if (segments_intersect(a, b, c, d, tol))
                throw ValidationError("SelfIntersecting",
                                      "edges " + std::to_string(i) + " and " + std::to_string(j) +
                                          " intersect");
        }
    }
}

std::uint64_t edge_key(int a, int b) {
    return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(a)) << 32) |
           static_cast<std::uint32_t>(b);
}

} // namespace

PolygonBoundary PolygonBoundary::from_vertices(std::vector<Vec2> vertices) {
    if (vertices.size() < 3)
        throw ValidationError("TooFewVertices",
                              "polygon needs >= 3 vertices, got " + std::to_string(vertices.size()));

    PolygonBoundary poly;
    poly.diameter_ = bbox_diagonal(vertices);
    if (poly.diameter_ <= 0.0)
        throw ValidationError("DegenerateEdge", "all vertices coincide");

    const double min_edge = 1e-12 * poly.diameter_;
    const std::size_t n = vertices.size();
    for (std::size_t i = 0; i < n; ++i) {
        if (norm(vertices[(i + 1) % n] - vertices[i]) <= min_edge)
            throw ValidationError("DegenerateEdge",
                                  "vertices " + std::to_string(i) + " and " +
                                      std::to_string((i + 1) % n) + " coincide");
    }

    double area2 = 0.0;
    for (std::size_t i = 0; i < n; ++i) area2 += cross(vertices[i], vertices[(i + 1) % n]);
    if (area2 < 0.0) {
        std::reverse(vertices.begin(), vertices.end());
        area2 = -area2;
    }
    if (area2 <= 1e-12 * poly.diameter_ * poly.diameter_)
        throw ValidationError("SelfIntersecting", "polygon has zero enclosed area");

    check_simple(vertices, poly.diameter_);

    poly.signed_area_ = 0.5 * area2;
    double perim = 0.0;
    for (std::size_t i = 0; i < n; ++i) perim += norm(vertices[(i + 1) % n] - vertices[i]);
    poly.perimeter_ = perim;
    poly.vertices_ = std::move(vertices);
    return poly;
}

PolygonBoundary make_polygon(const std::vector<Vec2>& vertices) {
    return PolygonBoundary::from_vertices(vertices);
}

PolygonBoundary make_shape(ShapeKind kind, int resolution, const ShapeParams& params) {
    if (resolution < 3) throw ValidationError("BadParams", "resolution must be >= 3");
    std::vector<Vec2> v;
    switch (kind) {
    case ShapeKind::circle: {
        if (params.radius <= 0.0) throw ValidationError("BadParams", "circle radius must be > 0");
        v.reserve(resolution);
        for (int i = 0; i < resolution; ++i) {
            double t = 2.0 * kPi * i / resolution;
            v.emplace_back(params.radius * std::cos(t), params.radius * std::sin(t));
        }
        break;
    }
    case ShapeKind::ellipse: {
        if (params.a <= 0.0 || params.b <= 0.0)
            throw ValidationError("BadParams", "ellipse semi-axes must be > 0");
        v.reserve(resolution);
        for (int i = 0; i < resolution; ++i) {
            double t = 2.0 * kPi * i / resolution;
            v.emplace_back(params.a * std::cos(t), params.b * std::sin(t));
        }
        break;
    }
    case ShapeKind::star: {
        if (params.points < 2) throw ValidationError("BadParams", "star needs >= 2 points");
        if (!(0.0 < params.inner && params.inner < params.outer))
            throw ValidationError("BadParams", "star requires 0 < inner_radius < outer_radius");
        const int corners = 2 * params.points;
        const int per_edge = std::max(1, (resolution + corners / 2) / corners);
        v.reserve(static_cast<std::size_t>(corners) * per_edge);
        for (int k = 0; k < corners; ++k) {
            double rk = (k % 2 == 0) ? params.outer : params.inner;
            double rn = (k % 2 == 0) ? params.inner : params.outer;
            double tk = kPi * k / params.points;
            double tn = kPi * (k + 1) / params.points;
            Vec2 a{rk * std::cos(tk), rk * std::sin(tk)};
            Vec2 b{rn * std::cos(tn), rn * std::sin(tn)};
            for (int j = 0; j < per_edge; ++j)
                v.push_back(a + (static_cast<double>(j) / per_edge) * (b - a));
        }
        break;
    }
    case ShapeKind::kidney: {
        v.reserve(resolution);
        for (int i = 0; i < resolution; ++i) {
            double t = 2.0 * kPi * i / resolution;
            double r = kKidneyA + kKidneyB * std::cos(t);
            v.emplace_back(r * std::cos(t), r * std::sin(t));
        }
        break;
    }
    case ShapeKind::square: {
        if (params.side <= 0.0) throw ValidationError("BadParams", "square side must be > 0");
        const int per_side = std::max(1, (resolution + 2) / 4);
        const double s = params.side / 2.0;
        const double h = params.side / per_side;
        v.reserve(static_cast<std::size_t>(4) * per_side);
        for (int i = 0; i < per_side; ++i) v.emplace_back(-s + i * h, -s);
        for (int i = 0; i < per_side; ++i) v.emplace_back(s, -s + i * h);
        for (int i = 0; i < per_side; ++i) v.emplace_back(s - i * h, s);
        for (int i = 0; i < per_side; ++i) v.emplace_back(-s, s - i * h);
        break;
    }
    }
    return PolygonBoundary::from_vertices(std::move(v));
}

TriangleMeshBoundary TriangleMeshBoundary::from_data(std::vector<Vec3> vertices,
                                                     std::vector<std::array<int, 3>> triangles,
                                                     Projection projection) {
    if (vertices.size() < 4 || triangles.size() < 4)
        throw ValidationError("NotWatertight", "a closed mesh needs >= 4 vertices and triangles");

    const int nv = static_cast<int>(vertices.size());
    for (const auto& t : triangles) {
        for (int k = 0; k < 3; ++k)
            if (t[k] < 0 || t[k] >= nv)
                throw ValidationError("BadIndex", "triangle index out of range");
        if (t[0] == t[1] || t[1] == t[2] || t[0] == t[2])
            throw ValidationError("NotWatertight", "degenerate triangle with repeated vertex");
    }

    double vol6 = 0.0;
    for (const auto& t : triangles)
        vol6 += dot(vertices[t[0]], cross(vertices[t[1]], vertices[t[2]]));
    if (vol6 < 0.0) {
        // consistent but inward orientation: flip everything
        for (auto& t : triangles) std::swap(t[1], t[2]);
        vol6 = -vol6;
    }

    // every directed edge exactly once, and its reverse present
    std::unordered_map<std::uint64_t, int> edges;
    edges.reserve(triangles.size() * 3);
    for (const auto& t : triangles) {
        for (int k = 0; k < 3; ++k) {
            auto key = edge_key(t[k], t[(k + 1) % 3]);
            if (++edges[key] > 1)
                throw ValidationError("NotWatertight", "directed edge shared by two triangles");
        }
    }
    for (const auto& [key, cnt] : edges) {
        int a = static_cast<int>(key >> 32);
        int b = static_cast<int>(key & 0xffffffffu);
        if (edges.find(edge_key(b, a)) == edges.end())
            throw ValidationError("NotWatertight", "boundary edge without opposite twin");
    }

    TriangleMeshBoundary mesh;
    mesh.diameter_ = bbox_diagonal(vertices);
    if (vol6 <= 1e-12 * mesh.diameter_ * mesh.diameter_ * mesh.diameter_)
        throw ValidationError("NotWatertight", "mesh encloses no volume");
    mesh.volume_ = vol6 / 6.0;

    double area = 0.0;
    for (const auto& t : triangles)
        area += 0.5 * norm(cross(vertices[t[1]] - vertices[t[0]], vertices[t[2]] - vertices[t[0]]));
    mesh.total_area_ = area;
    mesh.vertices_ = std::move(vertices);
    mesh.triangles_ = std::move(triangles);
    mesh.projection_ = projection;
    return mesh;
}

namespace {

struct SubdivisionResult {
    std::vector<Vec3> vertices;
    std::vector<std::array<int, 3>> triangles;
};

SubdivisionResult midpoint_subdivide(const std::vector<Vec3>& verts,
                                     const std::vector<std::array<int, 3>>& tris,
                                     bool project_to_sphere) {
    SubdivisionResult out;
    out.vertices = verts;
    out.triangles.reserve(tris.size() * 4);
    std::unordered_map<std::uint64_t, int> midpoint;
    midpoint.reserve(tris.size() * 2);

    auto mid = [&](int a, int b) {
        auto key = edge_key(std::min(a, b), std::max(a, b));
        auto it = midpoint.find(key);
        if (it != midpoint.end()) return it->second;
        Vec3 m = 0.5 * (out.vertices[a] + out.vertices[b]);
        if (project_to_sphere) m = normalized(m);
        int idx = static_cast<int>(out.vertices.size());
        out.vertices.push_back(m);
        midpoint.emplace(key, idx);
        return idx;
    };

    for (const auto& t : tris) {
        int ab = mid(t[0], t[1]);
        int bc = mid(t[1], t[2]);
        int ca = mid(t[2], t[0]);
        out.triangles.push_back({t[0], ab, ca});
        out.triangles.push_back({ab, t[1], bc});
        out.triangles.push_back({ca, bc, t[2]});
        out.triangles.push_back({ab, bc, ca});
    }
    return out;
}

} // namespace

TriangleMeshBoundary make_sphere_mesh(int subdivisions) {
    if (subdivisions < 0 || subdivisions > 7)
        throw ValidationError("BadParams", "subdivisions must be in [0, 7]");

    const double phi = (1.0 + std::sqrt(5.0)) / 2.0;
    std::vector<Vec3> verts = {
        {-1, phi, 0}, {1, phi, 0}, {-1, -phi, 0}, {1, -phi, 0},
        {0, -1, phi}, {0, 1, phi}, {0, -1, -phi}, {0, 1, -phi},
        {phi, 0, -1}, {phi, 0, 1}, {-phi, 0, -1}, {-phi, 0, 1},
    };
    for (auto& v : verts) v = normalized(v);
    std::vector<std::array<int, 3>> tris = {
        {0, 11, 5}, {0, 5, 1}, {0, 1, 7}, {0, 7, 10}, {0, 10, 11},
        {1, 5, 9}, {5, 11, 4}, {11, 10, 2}, {10, 7, 6}, {7, 1, 8},
        {3, 9, 4}, {3, 4, 2}, {3, 2, 6}, {3, 6, 8}, {3, 8, 9},
        {4, 9, 5}, {2, 4, 11}, {6, 2, 10}, {8, 6, 7}, {9, 8, 1},
    };
    for (auto& t : tris) {
        Vec3 n = cross(verts[t[1]] - verts[t[0]], verts[t[2]] - verts[t[0]]);
        Vec3 c = (verts[t[0]] + verts[t[1]] + verts[t[2]]) / 3.0;
        if (dot(n, c) < 0.0) std::swap(t[1], t[2]);
    }

    for (int s = 0; s < subdivisions; ++s) {
        auto next = midpoint_subdivide(verts, tris, /*project_to_sphere=*/true);
        verts = std::move(next.vertices);
        tris = std::move(next.triangles);
    }
    return TriangleMeshBoundary::from_data(std::move(verts), std::move(tris),
                                           TriangleMeshBoundary::Projection::unit_sphere);
}

DiscreteBoundary<2> discretize(const PolygonBoundary& shape) {
    DiscreteBoundary<2> b;
    const auto& v = shape.vertices();
    const std::size_t n = v.size();
    b.elements.reserve(n);
    double total = 0.0;
    double max_diam = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        Vec2 t = v[(i + 1) % n] - v[i];
        double len = norm(t);
        b.elements.push_back({v[i] + 0.5 * t, rotate_cw(t) / len, len});
        total += len;
        max_diam = std::max(max_diam, len);
    }
    b.total_measure = total;
    b.shape_diameter = shape.diameter();
    b.max_element_diameter = max_diam;
    b.source = std::make_shared<const PolygonBoundary>(shape);
    return b;
}

DiscreteBoundary<3> discretize(const TriangleMeshBoundary& shape) {
    DiscreteBoundary<3> b;
    const auto& v = shape.vertices();
    b.elements.reserve(shape.triangles().size());
    double total = 0.0;
    double max_diam = 0.0;
    for (const auto& t : shape.triangles()) {
        const Vec3& p0 = v[t[0]];
        const Vec3& p1 = v[t[1]];
        const Vec3& p2 = v[t[2]];
        Vec3 cr = cross(p1 - p0, p2 - p0);
        double area = 0.5 * norm(cr);
        b.elements.push_back({(p0 + p1 + p2) / 3.0, cr / (2.0 * area), area});
        total += area;
        max_diam = std::max({max_diam, norm(p1 - p0), norm(p2 - p1), norm(p0 - p2)});
    }
    b.total_measure = total;
    b.shape_diameter = shape.diameter();
    b.max_element_diameter = max_diam;
    b.source = std::make_shared<const TriangleMeshBoundary>(shape);
    return b;
}

template <std::size_t N>
DiscreteBoundary<N> DiscreteBoundary<N>::from_elements(std::vector<BoundaryElement<N>> elements) {
    if (elements.empty()) throw ValidationError("BadParams", "empty element list");
    DiscreteBoundary<N> b;
    double total = 0.0;
    std::vector<Vec<N>> centroids;
    centroids.reserve(elements.size());
    double max_diam = 0.0;
    for (const auto& e : elements) {
        if (!(e.measure > 0.0)) throw ValidationError("BadParams", "element measure must be > 0");
        if (std::abs(norm(e.normal) - 1.0) > 1e-12)
            throw ValidationError("BadParams", "element normal must be unit length");
        total += e.measure;
        centroids.push_back(e.centroid);
        // element extent estimated from its measure (length / equilateral area)
        double d = (N == 2) ? e.measure : std::sqrt(4.0 * e.measure / std::sqrt(3.0));
        max_diam = std::max(max_diam, d);
    }
    b.total_measure = total;
    b.shape_diameter = bbox_diagonal(centroids);
    b.max_element_diameter = max_diam;
    b.elements = std::move(elements);
    return b;
}

template DiscreteBoundary<2> DiscreteBoundary<2>::from_elements(std::vector<BoundaryElement<2>>);
template DiscreteBoundary<3> DiscreteBoundary<3>::from_elements(std::vector<BoundaryElement<3>>);

PolygonBoundary refine(const PolygonBoundary& shape, int factor) {
    if (factor < 2) throw ValidationError("BadParams", "refine factor must be >= 2");
    const auto& v = shape.vertices();
    const std::size_t n = v.size();
    std::vector<Vec2> out;
    out.reserve(n * factor);
    for (std::size_t i = 0; i < n; ++i) {
        const Vec2& a = v[i];
        const Vec2 t = v[(i + 1) % n] - v[i];
        for (int k = 0; k < factor; ++k) out.push_back(a + (static_cast<double>(k) / factor) * t);
    }
    return PolygonBoundary::from_vertices(std::move(out));
}

TriangleMeshBoundary refine(const TriangleMeshBoundary& shape, int factor) {
    if (factor < 2) throw ValidationError("BadParams", "refine factor must be >= 2");
    int passes = 0;
    for (int f = 1; f < factor; f *= 2) ++passes;
    auto verts = shape.vertices();
    auto tris = shape.triangles();
    const bool project = shape.projection() == TriangleMeshBoundary::Projection::unit_sphere;
    for (int s = 0; s < passes; ++s) {
        auto next = midpoint_subdivide(verts, tris, project);
        verts = std::move(next.vertices);
        tris = std::move(next.triangles);
    }
    return TriangleMeshBoundary::from_data(std::move(verts), std::move(tris), shape.projection());
}

bool is_convex_oracle(const PolygonBoundary& shape) {
    const auto& v = shape.vertices();
    const std::size_t n = v.size();
    const double tol = 1e-9 * shape.diameter() * shape.diameter();
    for (std::size_t i = 0; i < n; ++i) {
        Vec2 t0 = v[(i + 1) % n] - v[i];
        Vec2 t1 = v[(i + 2) % n] - v[(i + 1) % n];
        if (cross(t0, t1) < -tol) return false;
    }
    return true;
}

bool is_convex_oracle(const TriangleMeshBoundary& shape) {
    // Convex iff every vertex lies (within tolerance) behind every face plane,
    // i.e. the mesh coincides with its own convex hull.
    const auto& v = shape.vertices();
    const double tol = 1e-9 * shape.diameter();
    for (const auto& t : shape.triangles()) {
        Vec3 n = normalized(cross(v[t[1]] - v[t[0]], v[t[2]] - v[t[0]]));
        const Vec3& base = v[t[0]];
        for (const auto& p : v)
            if (dot(p - base, n) > tol) return false;
    }
    return true;
}

PolygonBoundary convex_hull(const PolygonBoundary& shape) {
    std::vector<Vec2> pts = shape.vertices();
    std::sort(pts.begin(), pts.end(), [](const Vec2& a, const Vec2& b) {
        return a.x() < b.x() || (a.x() == b.x() && a.y() < b.y());
    });
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());

    auto build = [](const std::vector<Vec2>& p, std::vector<Vec2>& out) {
        for (const auto& q : p) {
            while (out.size() >= 2 && cross(out.back() - out[out.size() - 2], q - out.back()) <= 0.0)
                out.pop_back();
            out.push_back(q);
        }
    };
    std::vector<Vec2> lower, upper;
    build(pts, lower);
    std::vector<Vec2> rev(pts.rbegin(), pts.rend());
    build(rev, upper);
    lower.pop_back();
    upper.pop_back();
    lower.insert(lower.end(), upper.begin(), upper.end());
    return PolygonBoundary::from_vertices(std::move(lower));
}

bool point_inside(const PolygonBoundary& shape, const Vec2& p) {
    const auto& v = shape.vertices();
    const std::size_t n = v.size();
    bool inside = false;
    for (std::size_t i = 0; i < n; ++i) {
        const Vec2& a = v[i];
        const Vec2& b = v[(i + 1) % n];
        if ((a.y() > p.y()) != (b.y() > p.y())) {
            double xint = a.x() + (p.y() - a.y()) * (b.x() - a.x()) / (b.y() - a.y());
            if (p.x() < xint) inside = !inside;
        }
    }
    return inside;
}

bool point_inside(const TriangleMeshBoundary& shape, const Vec3& p) {
    // Parity of crossings along a fixed, generically oriented ray.
    const Vec3 dir = normalized(Vec3{0.5377316323, 0.8323429187, 0.1345294611});
    const double tol = 1e-12 * shape.diameter() * shape.diameter();
    const auto& v = shape.vertices();
    int hits = 0;
    for (const auto& t : shape.triangles()) {
        if (!triangle_crossed(p, dir, v[t[0]], v[t[1]], v[t[2]], tol)) continue;
        Vec3 n = cross(v[t[1]] - v[t[0]], v[t[2]] - v[t[0]]);
        double denom = dot(dir, n);
        if (denom == 0.0) continue;
        double tpar = dot(v[t[0]] - p, n) / denom;
        if (tpar > 0.0) ++hits;
    }
    return hits % 2 == 1;
}

} // namespace convexity

#pragma once

#include "convexity/vec.hpp"

namespace convexity {

// Signed side of vertex v relative to the line through p with direction d.
// Values within `snap_tol` of zero are snapped to exactly zero so that the
// half-open crossing rule below is applied consistently everywhere.
inline double line_side(const Vec2& p, const Vec2& d, const Vec2& v, double snap_tol) {
    double s = cross(d, v - p);
    return (s <= snap_tol && s >= -snap_tol) ? 0.0 : s;
}

// Half-open crossing test: the edge owns its positive side. A vertex lying on
// the line belongs to the non-positive side, so a transversal pass through a
// shared vertex is counted by exactly one of the two incident edges.
inline bool segment_crossed(const Vec2& p, const Vec2& d,
                            const Vec2& a, const Vec2& b, double snap_tol) {
    double sa = line_side(p, d, a, snap_tol);
    double sb = line_side(p, d, b, snap_tol);
    return (sa > 0.0) != (sb > 0.0);
}

// Line-through-triangle test via the three scalar triple products
// det(v_k - p, v_{k+1} - p, d). The line pierces the interior iff all three
// have the same strict sign; near-zero values are snapped to zero, which
// drops edge-grazing lines from both neighbouring triangles.
inline bool triangle_crossed(const Vec3& p, const Vec3& d,
                             const Vec3& v0, const Vec3& v1, const Vec3& v2,
                             double snap_tol) {
    const Vec3 e0 = v0 - p;
    const Vec3 e1 = v1 - p;
    const Vec3 e2 = v2 - p;
    double t0 = dot(d, cross(e0, e1));
    double t1 = dot(d, cross(e1, e2));
    double t2 = dot(d, cross(e2, e0));
    if (t0 <= snap_tol && t0 >= -snap_tol) t0 = 0.0;
    if (t1 <= snap_tol && t1 >= -snap_tol) t1 = 0.0;
    if (t2 <= snap_tol && t2 >= -snap_tol) t2 = 0.0;
    return (t0 > 0.0 && t1 > 0.0 && t2 > 0.0) || (t0 < 0.0 && t1 < 0.0 && t2 < 0.0);
}

} // namespace convexity

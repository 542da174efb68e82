#pragma once

#include <cstddef>

#include "convexity/geometry.hpp"
#include "convexity/vec.hpp"

namespace convexity {

// c_n = (1/2) * integral of |w_1| over the unit sphere S^{n-1}; equals the
// volume of the unit (n-1)-ball. Closed form via the two-step recurrence,
// exact in low dimensions (c_2 = 2, c_3 = pi).
double c_constant(int dimension);

// Surface area |S^{n-1}| of the unit sphere; companion constant used by the
// Monte Carlo cross-checks of c_constant.
double sphere_surface_area(int dimension);

// The interaction kernel |<nx, y-x> <y-x, ny>| / |x-y|^(n+1) with n = N.
// Symmetric under (x, nx) <-> (y, ny) with bit-identical results.
// Throws CoincidentPoints when |x-y| <= 1e-14 * scale.
template <std::size_t N>
double kernel(const Vec<N>& x, const Vec<N>& nx, const Vec<N>& y, const Vec<N>& ny);

struct EnergyReport {
    double energy = 0.0;           // pair-sum estimate of the double integral
    double boundary_measure = 0.0; // |boundary|
    double c_n = 0.0;
    double defect = 0.0;           // energy / boundary_measure - c_n
    double tolerance = 0.0;        // discretization tolerance max(1e-3, h)
    int dimension = 0;
    std::size_t element_count = 0;
};

// One-point (centroid) quadrature over all ordered element pairs; the i == j
// diagonal vanishes identically for flat elements and is skipped. The sum is
// accumulated in a fixed-shape pairwise tree, so the result is bit-identical
// across runs and thread counts.
template <std::size_t N>
EnergyReport total_energy(const DiscreteBoundary<N>& boundary);

template <std::size_t N>
double defect(const DiscreteBoundary<N>& boundary);

// Single-point integral of the kernel over the rest of the boundary;
// converges to c_n at every element of a convex boundary.
template <std::size_t N>
double pointwise_boundary(const DiscreteBoundary<N>& boundary, std::size_t element_index);

// Interior variant with a free unit direction w; converges to 2 c_n for
// convex domains, independent of x and w. Requires x strictly inside with
// clearance > 2 * max element diameter.
double pointwise_interior(const DiscreteBoundary<2>& boundary, const Vec2& x, const Vec2& w);
double pointwise_interior(const DiscreteBoundary<3>& boundary, const Vec3& x, const Vec3& w);

// Classification threshold for the defect-based convexity verdict:
// max(1e-3, h) with h = max element diameter / shape diameter. Calibrated on
// the circle family, whose defect is ~h^2/2 and sits far below the line.
template <std::size_t N>
double defect_tolerance(const DiscreteBoundary<N>& boundary);

} // namespace convexity

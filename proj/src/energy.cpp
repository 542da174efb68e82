#include "convexity/energy.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>
#include <vector>

#include "convexity/errors.hpp"
#include "convexity/parallel.hpp"

namespace convexity {

namespace {

// Arithmetic core shared by the public kernel and the pair-sum loops, so all
// paths produce bit-identical values for the same inputs.
template <std::size_t N>
inline double kernel_core(const Vec<N>& x, const Vec<N>& nx, const Vec<N>& y, const Vec<N>& ny,
                          double r2) {
    const Vec<N> d = y - x;
    const double a = dot(nx, d);
    const double b = dot(d, ny);
    if constexpr (N == 2) {
        return std::abs(a * b) / (r2 * std::sqrt(r2)); // |x-y|^3
    } else {
        return std::abs(a * b) / (r2 * r2); // |x-y|^4
    }
}

// Row sum: sum over j != i of kernel(c_i, n_i, c_j, n_j) * m_j, reduced with
// the fixed-shape pairwise tree. `buf` must have size element_count.
template <std::size_t N>
double interaction_row(const std::vector<BoundaryElement<N>>& els, std::size_t i,
                       double min_r2, std::vector<double>& buf) {
    const auto& ei = els[i];
    const std::size_t m = els.size();
    for (std::size_t j = 0; j < m; ++j) {
        const auto& ej = els[j];
        const Vec<N> d = ej.centroid - ei.centroid;
        const double r2 = dot(d, d);
        if (r2 <= min_r2) {
            if (j != i)
                throw ValidationError("CoincidentPoints",
                                      "element centroids " + std::to_string(i) + " and " +
                                          std::to_string(j) + " coincide");
            buf[j] = 0.0; // flat-element diagonal vanishes identically
            continue;
        }
        buf[j] = kernel_core<N>(ei.centroid, ei.normal, ej.centroid, ej.normal, r2) * ej.measure;
    }
    return pairwise_sum(buf);
}

template <std::size_t N>
std::vector<double> all_rows(const DiscreteBoundary<N>& boundary) {
    const auto& els = boundary.elements;
    const double min_r = 1e-14 * boundary.shape_diameter;
    const double min_r2 = min_r * min_r;
    std::vector<double> rows(els.size());
    parallel_for_chunks(els.size(), [&](std::size_t begin, std::size_t end) {
        std::vector<double> buf(els.size());
        for (std::size_t i = begin; i < end; ++i)
            rows[i] = interaction_row(els, i, min_r2, buf);
    });
    return rows;
}

} // namespace

double c_constant(int dimension) {
    if (dimension < 2) throw ValidationError("BadDimension", "dimension must be >= 2");
    // unit-ball volumes: V_0 = 1, V_1 = 2, V_m = V_{m-2} * 2*pi / m
    const int m = dimension - 1;
    double v_even = 1.0; // V_0
    double v_odd = 2.0;  // V_1
    for (int k = 2; k <= m; ++k) {
        if (k % 2 == 0)
            v_even *= 2.0 * std::numbers::pi / k;
        else
            v_odd *= 2.0 * std::numbers::pi / k;
    }
    return (m % 2 == 0) ? v_even : v_odd;
}

double sphere_surface_area(int dimension) {
    if (dimension < 2) throw ValidationError("BadDimension", "dimension must be >= 2");
    // |S^{n-1}|: A_2 = 2*pi, A_3 = 4*pi, A_n = A_{n-2} * 2*pi / (n - 2)
    double a_even = 2.0 * std::numbers::pi;
    double a_odd = 4.0 * std::numbers::pi;
    for (int k = 4; k <= dimension; ++k) {
        if (k % 2 == 0)
            a_even *= 2.0 * std::numbers::pi / (k - 2);
        else
            a_odd *= 2.0 * std::numbers::pi / (k - 2);
    }
    return (dimension % 2 == 0) ? a_even : a_odd;
}

template <std::size_t N>
double kernel(const Vec<N>& x, const Vec<N>& nx, const Vec<N>& y, const Vec<N>& ny) {
    const Vec<N> d = y - x;
    const double r2 = dot(d, d);
    const double scale2 = std::max({dot(x, x), dot(y, y), 1.0});
    if (r2 <= 1e-28 * scale2)
        throw ValidationError("CoincidentPoints", "kernel requires x != y");
    return kernel_core<N>(x, nx, y, ny, r2);
}

template double kernel<2>(const Vec2&, const Vec2&, const Vec2&, const Vec2&);
template double kernel<3>(const Vec3&, const Vec3&, const Vec3&, const Vec3&);

template <std::size_t N>
double defect_tolerance(const DiscreteBoundary<N>& boundary) {
    double h = boundary.max_element_diameter / boundary.shape_diameter;
    return std::max(1e-3, h);
}

template double defect_tolerance<2>(const DiscreteBoundary<2>&);
template double defect_tolerance<3>(const DiscreteBoundary<3>&);

template <std::size_t N>
EnergyReport total_energy(const DiscreteBoundary<N>& boundary) {
    const auto& els = boundary.elements;
    if (els.size() < 2) throw ValidationError("BadParams", "boundary needs >= 2 elements");

    std::vector<double> rows = all_rows(boundary);
    for (std::size_t i = 0; i < rows.size(); ++i) rows[i] *= els[i].measure;
    const double energy = pairwise_sum(rows);

    EnergyReport report;
    report.energy = energy;
    report.boundary_measure = boundary.total_measure;
    report.c_n = c_constant(static_cast<int>(N));
    report.defect = energy / boundary.total_measure - report.c_n;
    report.tolerance = defect_tolerance(boundary);
    report.dimension = static_cast<int>(N);
    report.element_count = els.size();
    return report;
}

template EnergyReport total_energy<2>(const DiscreteBoundary<2>&);
template EnergyReport total_energy<3>(const DiscreteBoundary<3>&);

template <std::size_t N>
double defect(const DiscreteBoundary<N>& boundary) {
    return total_energy(boundary).defect;
}

template double defect<2>(const DiscreteBoundary<2>&);
template double defect<3>(const DiscreteBoundary<3>&);

template <std::size_t N>
double pointwise_boundary(const DiscreteBoundary<N>& boundary, std::size_t element_index) {
    const auto& els = boundary.elements;
    if (element_index >= els.size())
        throw ValidationError("IndexOutOfRange",
                              "element index " + std::to_string(element_index) + " out of range");
    const double min_r = 1e-14 * boundary.shape_diameter;
    std::vector<double> buf(els.size());
    return interaction_row(els, element_index, min_r * min_r, buf);
}

template double pointwise_boundary<2>(const DiscreteBoundary<2>&, std::size_t);
template double pointwise_boundary<3>(const DiscreteBoundary<3>&, std::size_t);

namespace {

template <std::size_t N>
double distance_to_elements(const DiscreteBoundary<N>& boundary, const Vec<N>& x) {
    // centroid distance is enough here: the clearance requirement already
    // includes a 2x element-diameter margin
    double best = std::numeric_limits<double>::infinity();
    for (const auto& e : boundary.elements) best = std::min(best, norm(e.centroid - x));
    return best;
}

template <std::size_t N>
double pointwise_interior_impl(const DiscreteBoundary<N>& boundary, const Vec<N>& x,
                               const Vec<N>& w) {
    if (std::abs(norm(w) - 1.0) > 1e-12)
        throw ValidationError("BadParams", "direction w must be a unit vector");
    if (distance_to_elements(boundary, x) <= 2.0 * boundary.max_element_diameter)
        throw ValidationError("PointTooCloseToBoundary",
                              "interior point needs clearance > 2 * max element diameter");
    const auto& els = boundary.elements;
    std::vector<double> buf(els.size());
    for (std::size_t j = 0; j < els.size(); ++j) {
        const Vec<N> d = els[j].centroid - x;
        const double r2 = dot(d, d);
        buf[j] = kernel_core<N>(x, w, els[j].centroid, els[j].normal, r2) * els[j].measure;
    }
    return pairwise_sum(buf);
}

} // namespace

double pointwise_interior(const DiscreteBoundary<2>& boundary, const Vec2& x, const Vec2& w) {
    if (!boundary.source || !point_inside(*boundary.source, x))
        throw ValidationError("PointOutside", "x must lie strictly inside the domain");
    return pointwise_interior_impl(boundary, x, w);
}

double pointwise_interior(const DiscreteBoundary<3>& boundary, const Vec3& x, const Vec3& w) {
    if (!boundary.source || !point_inside(*boundary.source, x))
        throw ValidationError("PointOutside", "x must lie strictly inside the domain");
    return pointwise_interior_impl(boundary, x, w);
}

} // namespace convexity

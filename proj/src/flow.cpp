#include "convexity/flow.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "convexity/energy.hpp"
#include "convexity/errors.hpp"
#include "convexity/io.hpp"
#include "convexity/parallel.hpp"

namespace convexity {

namespace {

struct EdgeData {
    std::vector<Vec2> tangent;  // t_k = v_{k+1} - v_k
    std::vector<Vec2> centroid; // edge midpoints
    std::vector<double> length;
    double perimeter = 0.0;
};

EdgeData edge_data(const std::vector<Vec2>& v) {
    const std::size_t n = v.size();
    EdgeData e;
    e.tangent.resize(n);
    e.centroid.resize(n);
    e.length.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        e.tangent[i] = v[(i + 1) % n] - v[i];
        e.centroid[i] = v[i] + 0.5 * e.tangent[i];
        e.length[i] = norm(e.tangent[i]);
        e.perimeter += e.length[i];
    }
    return e;
}

double defect_of(const std::vector<Vec2>& v) {
    return defect(discretize(PolygonBoundary::from_vertices(v)));
}

// Energy over ordered pairs written in edge variables:
//   E = sum_{i != j} |A_ij B_ij| / r_ij^3,
//   A_ij = cross(d_ij, t_i), B_ij = cross(d_ij, t_j), d_ij = c_j - c_i.
// By the (i,j) <-> (j,i) symmetry it is enough to accumulate, for each row i,
// the contributions to v_i and v_{i+1}; the "other role" of vertex k arrives
// through row k-1. Each row is owned by one thread and summed in index order,
// so the gradient is bit-identical for any thread count.
double analytic_energy_gradient(const std::vector<Vec2>& v, std::vector<Vec2>& grad) {
    const std::size_t n = v.size();
    const EdgeData e = edge_data(v);

    std::vector<double> energy_rows(n, 0.0);
    std::vector<Vec2> to_self(n, Vec2{}); // row i -> v_i
    std::vector<Vec2> to_next(n, Vec2{}); // row i -> v_{i+1}

    parallel_for_chunks(n, [&](std::size_t begin, std::size_t end) {
        for (std::size_t i = begin; i < end; ++i) {
            Vec2 gs{}, gn{};
            double erow = 0.0;
            for (std::size_t j = 0; j < n; ++j) {
                if (j == i) continue;
                const Vec2 d = e.centroid[j] - e.centroid[i];
                const double r2 = dot(d, d);
                const double a = cross(d, e.tangent[i]);
                const double b = cross(d, e.tangent[j]);
                const double ab = a * b;
                const double r3 = r2 * std::sqrt(r2);
                erow += std::abs(ab) / r3;

                // Row i supplies only the (v_i, v_{i+1}) parts; the (j, i)
                // row supplies the rest. Both ordered pairs carry the same
                // term, hence the factor 2 on the gradient coefficients.
                // Subgradient choice 0 at the |.| kink.
                const double s = (ab > 0.0) ? 1.0 : (ab < 0.0 ? -1.0 : 0.0);
                const double t1 = 2.0 * s * b / r3;                      // coeff of dA
                const double t2 = 2.0 * s * a / r3;                      // coeff of dB
                const double t3 = -6.0 * std::abs(ab) / (r3 * r2);       // coeff of <d, dd>

                const Vec2 gd{t1 * e.tangent[i].y() + t2 * e.tangent[j].y() + t3 * d.x(),
                              -t1 * e.tangent[i].x() - t2 * e.tangent[j].x() + t3 * d.y()};
                const Vec2 gti{-t1 * d.y(), t1 * d.x()};
                gs += -0.5 * gd - gti;
                gn += -0.5 * gd + gti;
            }
            energy_rows[i] = erow;
            to_self[i] = gs;
            to_next[i] = gn;
        }
    });

    grad.resize(n);
    for (std::size_t k = 0; k < n; ++k) grad[k] = to_self[k] + to_next[(k + n - 1) % n];
    return pairwise_sum(energy_rows);
}

} // namespace

std::vector<Vec2> defect_gradient(const PolygonBoundary& shape, GradientMode mode,
                                  double fd_epsilon) {
    const std::vector<Vec2>& v = shape.vertices();
    const std::size_t n = v.size();
    std::vector<Vec2> grad(n, Vec2{});

    if (mode == GradientMode::finite_difference) {
        const double eps = fd_epsilon * shape.diameter();
        if (!(eps > 0.0)) throw ValidationError("BadParams", "fd_epsilon must be > 0");
        // 2n coordinates, central differences; each evaluation is independent
        parallel_for_chunks(2 * n, [&](std::size_t begin, std::size_t end) {
            std::vector<Vec2> work = v;
            for (std::size_t c = begin; c < end; ++c) {
                const std::size_t k = c / 2;
                const std::size_t axis = c % 2;
                const double saved = work[k][axis];
                work[k][axis] = saved + eps;
                const double dp = defect_of(work);
                work[k][axis] = saved - eps;
                const double dm = defect_of(work);
                work[k][axis] = saved;
                grad[k][axis] = (dp - dm) / (2.0 * eps);
            }
        });
    } else {
        std::vector<Vec2> grad_e;
        const double energy = analytic_energy_gradient(v, grad_e);
        const EdgeData e = edge_data(v);
        const double p = e.perimeter;
        for (std::size_t k = 0; k < n; ++k) {
            const std::size_t prev = (k + n - 1) % n;
            const Vec2 grad_p = e.tangent[prev] / e.length[prev] - e.tangent[k] / e.length[k];
            grad[k] = grad_e[k] / p - (energy / (p * p)) * grad_p;
        }
    }

    for (const auto& g : grad)
        if (!std::isfinite(g.x()) || !std::isfinite(g.y()))
            throw NumericError("NonFiniteGradient", "gradient has non-finite components");
    return grad;
}

namespace {

bool is_simple(const std::vector<Vec2>& v) {
    try {
        PolygonBoundary::from_vertices(v);
        return true;
    } catch (const ValidationError&) {
        return false;
    }
}

// Moves each vertex along its local tangent toward the arc-length midpoint of
// its neighbours; first-order tangential, so the represented curve is kept.
void redistribute_tangentially(std::vector<Vec2>& v) {
    const std::size_t n = v.size();
    std::vector<Vec2> out = v;
    for (std::size_t k = 0; k < n; ++k) {
        const Vec2& prev = v[(k + n - 1) % n];
        const Vec2& next = v[(k + 1) % n];
        const Vec2 chord = next - prev;
        const double len = norm(chord);
        if (len == 0.0) continue;
        const Vec2 that = chord / len;
        const Vec2 mid = 0.5 * (prev + next);
        out[k] = v[k] + 0.5 * dot(mid - v[k], that) * that;
    }
    if (is_simple(out)) v = std::move(out);
}

} // namespace

FlowTrace convexify(const PolygonBoundary& shape, const FlowParams& params) {
    if (params.max_iterations < 1)
        throw ValidationError("BadParams", "max_iterations must be >= 1");
    if (!(params.step_size > 0.0)) throw ValidationError("BadParams", "step_size must be > 0");
    if (params.gradient_mode == GradientMode::finite_difference && shape.size() > 512)
        throw ValidationError("BadParams",
                              "finite-difference mode is limited to 512 vertices (O(N^3) cost)");

    std::vector<Vec2> v = shape.vertices();
    const std::size_t n = v.size();

    std::vector<FlowIteration> iterations;
    double current = defect_of(v);
    iterations.push_back({0, current, edge_data(v).perimeter, 0.0});

    for (int it = 0; it < params.max_iterations; ++it) {
        if (current < params.stop_defect) break;

        const PolygonBoundary poly = PolygonBoundary::from_vertices(v);
        const std::vector<Vec2> grad =
            defect_gradient(poly, params.gradient_mode, params.fd_epsilon);

        double step = params.step_size;
        std::vector<Vec2> next(n);
        bool accepted = false;
        for (int halving = 0; halving <= 20; ++halving) {
            for (std::size_t k = 0; k < n; ++k) next[k] = v[k] - step * grad[k];
            if (is_simple(next)) {
                accepted = true;
                break;
            }
            step *= 0.5;
        }
        if (!accepted)
            throw NumericError("SelfIntersectionUnrecoverable",
                               "step still self-intersects after 20 halvings");
        if (params.tangential_redistribution) redistribute_tangentially(next);

        double max_disp = 0.0;
        for (std::size_t k = 0; k < n; ++k) max_disp = std::max(max_disp, norm(next[k] - v[k]));
        v = std::move(next);

        current = defect_of(v);
        iterations.push_back({it + 1, current, edge_data(v).perimeter, max_disp});
    }

    return FlowTrace{std::move(iterations), PolygonBoundary::from_vertices(std::move(v)),
                     current < params.stop_defect};
}

std::string trace_to_csv(const FlowTrace& trace) {
    std::string out = "iteration,defect,perimeter,max_displacement\n";
    for (const auto& it : trace.iterations) {
        out += std::to_string(it.iteration) + "," + format_double(it.defect) + "," +
               format_double(it.perimeter) + "," + format_double(it.max_displacement) + "\n";
    }
    return out;
}

} // namespace convexity

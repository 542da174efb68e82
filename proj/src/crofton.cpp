#include "convexity/crofton.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <mutex>
#include <numbers>
#include <tuple>

#include <boost/math/special_functions/gamma.hpp>

#include "convexity/energy.hpp"
#include "convexity/errors.hpp"
#include "convexity/parallel.hpp"
#include "convexity/predicates.hpp"
#include "convexity/rng.hpp"

namespace convexity {

namespace {

constexpr double kPi = std::numbers::pi;

// P(Poisson(mu) >= k), numerically stable via the regularized incomplete gamma.
double poisson_upper_tail(std::uint64_t k, double mu) {
    if (k == 0) return 1.0;
    if (mu <= 0.0) return 0.0;
    return boost::math::gamma_p(static_cast<double>(k), mu);
}

// Chi-square upper tail with `dof` degrees of freedom.
double chi_square_pvalue(double stat, unsigned dof) {
    return boost::math::gamma_q(dof / 2.0, stat / 2.0);
}

} // namespace

template <std::size_t N>
Line<N> Line<N>::make(const Vec<N>& point, const Vec<N>& direction) {
    double len = norm(direction);
    if (!(len > 0.0)) throw ValidationError("BadParams", "line direction must be nonzero");
    Vec<N> d = direction / len;
    for (std::size_t k = 0; k < N; ++k) {
        if (d[k] > 0.0) break;
        if (d[k] < 0.0) {
            d = -d;
            break;
        }
    }
    return Line<N>{point, d};
}

template struct Line<2>;
template struct Line<3>;

template <std::size_t N>
LineSampler<N>::LineSampler(const Vec<N>& center, double radius, std::uint64_t seed)
    : center_(center), radius_(radius), seed_(seed) {
    if (!(radius > 0.0)) throw ValidationError("BadParams", "sampler radius must be > 0");
}

template <>
double LineSampler<2>::sampled_measure() const {
    return 2.0 * radius_; // length of the offset interval
}

template <>
double LineSampler<3>::sampled_measure() const {
    return kPi * radius_ * radius_; // area of the offset disk
}

template <>
Line2 LineSampler<2>::sample(std::uint64_t draw_index) const {
    CounterRng rng(seed_);
    const double theta = 2.0 * kPi * rng.uniform(draw_index, 0);
    const Vec2 dir{std::cos(theta), std::sin(theta)};
    const double offset = (2.0 * rng.uniform(draw_index, 1) - 1.0) * radius_;
    const Vec2 point = center_ + offset * rotate_cw(dir);
    return Line2::make(point, dir);
}

template <>
Line3 LineSampler<3>::sample(std::uint64_t draw_index) const {
    CounterRng rng(seed_);
    const double z = 2.0 * rng.uniform(draw_index, 0) - 1.0;
    const double phi = 2.0 * kPi * rng.uniform(draw_index, 1);
    const double s = std::sqrt(std::max(0.0, 1.0 - z * z));
    const Vec3 dir{s * std::cos(phi), s * std::sin(phi), z};

    // orthonormal frame of the plane through center_ orthogonal to dir
    std::size_t least = 0;
    for (std::size_t k = 1; k < 3; ++k)
        if (std::abs(dir[k]) < std::abs(dir[least])) least = k;
    Vec3 axis{};
    axis[least] = 1.0;
    const Vec3 e1 = normalized(cross(dir, axis));
    const Vec3 e2 = cross(dir, e1);

    const double r = radius_ * std::sqrt(rng.uniform(draw_index, 2));
    const double psi = 2.0 * kPi * rng.uniform(draw_index, 3);
    const Vec3 point = center_ + r * std::cos(psi) * e1 + r * std::sin(psi) * e2;
    return Line3::make(point, dir);
}

template class LineSampler<2>;
template class LineSampler<3>;

template <std::size_t N>
Line<N> sample_line(const LineSampler<N>& sampler, std::uint64_t draw_index) {
    return sampler.sample(draw_index);
}

template Line2 sample_line<2>(const LineSampler<2>&, std::uint64_t);
template Line3 sample_line<3>(const LineSampler<3>&, std::uint64_t);

namespace {

template <std::size_t N, class Source>
LineSampler<N> sampler_for(const Source& shape, std::uint64_t seed, double radius_override) {
    const auto boundary = discretize(shape);
    Vec<N> center{};
    for (const auto& e : boundary.elements) center += e.measure * e.centroid;
    center = center / boundary.total_measure;

    double circum = 0.0;
    for (const auto& v : shape.vertices()) circum = std::max(circum, norm(v - center));
    double needed = 0.0;
    for (const auto& e : boundary.elements)
        needed = std::max(needed, norm(e.centroid - center) + boundary.max_element_diameter);
    double radius = radius_override > 0.0 ? radius_override : std::max(1.1 * circum, needed);
    return LineSampler<N>(center, radius, seed);
}

} // namespace

LineSampler<2> make_sampler(const PolygonBoundary& shape, std::uint64_t seed,
                            double radius_override) {
    return sampler_for<2>(shape, seed, radius_override);
}

LineSampler<3> make_sampler(const TriangleMeshBoundary& shape, std::uint64_t seed,
                            double radius_override) {
    return sampler_for<3>(shape, seed, radius_override);
}

int count_intersections(const Line2& line, const PolygonBoundary& boundary) {
    const auto& v = boundary.vertices();
    const std::size_t n = v.size();
    const double tol = 1e-12 * boundary.diameter();
    int count = 0;
    for (std::size_t i = 0; i < n; ++i)
        if (segment_crossed(line.point, line.direction, v[i], v[(i + 1) % n], tol)) ++count;
    return count;
}

int count_intersections(const Line3& line, const TriangleMeshBoundary& boundary) {
    const auto& v = boundary.vertices();
    const double tol = 1e-12 * boundary.diameter() * boundary.diameter();
    int count = 0;
    for (const auto& t : boundary.triangles())
        if (triangle_crossed(line.point, line.direction, v[t[0]], v[t[1]], v[t[2]], tol)) ++count;
    return count;
}

// ---------------------------------------------------------------------------
// BVH over boundary primitives

template <std::size_t N>
struct IntersectionCounter<N>::Impl {
    struct Node {
        double lo[N];
        double hi[N];
        std::uint32_t left = 0;  // 0 marks a leaf (root is never a child)
        std::uint32_t right = 0;
        std::uint32_t begin = 0;
        std::uint32_t count = 0;
    };

    // primitives: segments (2 points) or triangles (3 points), flattened
    static constexpr std::size_t kVerts = (N == 2) ? 2 : 3;
    std::vector<Vec<N>> prim_verts; // kVerts per primitive, BVH leaf order
    std::vector<Node> nodes;
    double snap_tol = 0.0;
    static constexpr std::uint32_t kLeafSize = 8;

    struct BuildRef {
        Vec<N> lo, hi, center;
        std::uint32_t prim;
    };

    std::uint32_t build(std::vector<BuildRef>& refs, std::size_t begin, std::size_t end,
                        const std::vector<Vec<N>>& verts_in, double pad) {
        Node node;
        for (std::size_t k = 0; k < N; ++k) {
            node.lo[k] = std::numeric_limits<double>::infinity();
            node.hi[k] = -std::numeric_limits<double>::infinity();
        }
        for (std::size_t i = begin; i < end; ++i) {
            for (std::size_t k = 0; k < N; ++k) {
                node.lo[k] = std::min(node.lo[k], refs[i].lo[k] - pad);
                node.hi[k] = std::max(node.hi[k], refs[i].hi[k] + pad);
            }
        }
        const std::uint32_t index = static_cast<std::uint32_t>(nodes.size());
        nodes.push_back(node);

        if (end - begin <= kLeafSize) {
            nodes[index].begin = static_cast<std::uint32_t>(prim_verts.size() / kVerts);
            nodes[index].count = static_cast<std::uint32_t>(end - begin);
            for (std::size_t i = begin; i < end; ++i)
                for (std::size_t k = 0; k < kVerts; ++k)
                    prim_verts.push_back(verts_in[refs[i].prim * kVerts + k]);
            return index;
        }

        std::size_t axis = 0;
        double best = -1.0;
        for (std::size_t k = 0; k < N; ++k) {
            double extent = node.hi[k] - node.lo[k];
            if (extent > best) {
                best = extent;
                axis = k;
            }
        }
        std::size_t mid = (begin + end) / 2;
        std::nth_element(refs.begin() + begin, refs.begin() + mid, refs.begin() + end,
                         [axis](const BuildRef& a, const BuildRef& b) {
                             return a.center[axis] < b.center[axis];
                         });
        std::uint32_t l = build(refs, begin, mid, verts_in, pad);
        std::uint32_t r = build(refs, mid, end, verts_in, pad);
        nodes[index].left = l;
        nodes[index].right = r;
        return index;
    }

    bool box_hit(const Node& node, const Vec<N>& p, const Vec<N>& d) const {
        double tmin = -std::numeric_limits<double>::infinity();
        double tmax = std::numeric_limits<double>::infinity();
        for (std::size_t k = 0; k < N; ++k) {
            if (d[k] == 0.0) {
                if (p[k] < node.lo[k] || p[k] > node.hi[k]) return false;
                continue;
            }
            double inv = 1.0 / d[k];
            double t0 = (node.lo[k] - p[k]) * inv;
            double t1 = (node.hi[k] - p[k]) * inv;
            if (t0 > t1) std::swap(t0, t1);
            tmin = std::max(tmin, t0);
            tmax = std::min(tmax, t1);
            if (tmin > tmax) return false;
        }
        return true;
    }

    int count(const Line<N>& line) const {
        int total = 0;
        std::uint32_t stack[64];
        int top = 0;
        stack[top++] = 0;
        while (top > 0) {
            const Node& node = nodes[stack[--top]];
            if (!box_hit(node, line.point, line.direction)) continue;
            if (node.left == 0) {
                for (std::uint32_t i = 0; i < node.count; ++i) {
                    const Vec<N>* v = &prim_verts[(node.begin + i) * kVerts];
                    if constexpr (N == 2) {
                        if (segment_crossed(line.point, line.direction, v[0], v[1], snap_tol))
                            ++total;
                    } else {
                        if (triangle_crossed(line.point, line.direction, v[0], v[1], v[2],
                                             snap_tol))
                            ++total;
                    }
                }
            } else {
                stack[top++] = node.left;
                stack[top++] = node.right;
            }
        }
        return total;
    }
};

template <std::size_t N>
IntersectionCounter<N>::IntersectionCounter(const Source& boundary) : impl_(new Impl) {
    std::vector<Vec<N>> verts;
    std::size_t prim_count = 0;
    if constexpr (N == 2) {
        const auto& v = boundary.vertices();
        prim_count = v.size();
        verts.reserve(prim_count * 2);
        for (std::size_t i = 0; i < v.size(); ++i) {
            verts.push_back(v[i]);
            verts.push_back(v[(i + 1) % v.size()]);
        }
        impl_->snap_tol = 1e-12 * boundary.diameter();
    } else {
        const auto& v = boundary.vertices();
        prim_count = boundary.triangles().size();
        verts.reserve(prim_count * 3);
        for (const auto& t : boundary.triangles()) {
            verts.push_back(v[t[0]]);
            verts.push_back(v[t[1]]);
            verts.push_back(v[t[2]]);
        }
        impl_->snap_tol = 1e-12 * boundary.diameter() * boundary.diameter();
    }

    std::vector<typename Impl::BuildRef> refs(prim_count);
    for (std::size_t i = 0; i < prim_count; ++i) {
        auto& r = refs[i];
        r.prim = static_cast<std::uint32_t>(i);
        r.lo = verts[i * Impl::kVerts];
        r.hi = r.lo;
        for (std::size_t k = 1; k < Impl::kVerts; ++k) {
            const Vec<N>& p = verts[i * Impl::kVerts + k];
            for (std::size_t c = 0; c < N; ++c) {
                r.lo[c] = std::min(r.lo[c], p[c]);
                r.hi[c] = std::max(r.hi[c], p[c]);
            }
        }
        r.center = 0.5 * (r.lo + r.hi);
    }
    impl_->nodes.reserve(2 * prim_count / Impl::kLeafSize + 4);
    impl_->prim_verts.reserve(verts.size());
    impl_->build(refs, 0, prim_count, verts, 1e-12 * boundary.diameter());
}

template <std::size_t N>
IntersectionCounter<N>::~IntersectionCounter() = default;
template <std::size_t N>
IntersectionCounter<N>::IntersectionCounter(IntersectionCounter&&) noexcept = default;
template <std::size_t N>
IntersectionCounter<N>& IntersectionCounter<N>::operator=(IntersectionCounter&&) noexcept = default;

template <std::size_t N>
int IntersectionCounter<N>::count(const Line<N>& line) const {
    return impl_->count(line);
}

template class IntersectionCounter<2>;
template class IntersectionCounter<3>;

// ---------------------------------------------------------------------------
// Monte Carlo moments of the intersection count

namespace {

struct CountMoments {
    std::uint64_t samples = 0;
    std::uint64_t sum_n = 0, sum_n2 = 0, sum_n3 = 0, sum_n4 = 0;
    std::uint64_t lines_ge3 = 0, odd_count = 0;
    std::vector<std::uint64_t> histogram;

    void absorb(const CountMoments& o) {
        samples += o.samples;
        sum_n += o.sum_n;
        sum_n2 += o.sum_n2;
        sum_n3 += o.sum_n3;
        sum_n4 += o.sum_n4;
        lines_ge3 += o.lines_ge3;
        odd_count += o.odd_count;
        if (histogram.size() < o.histogram.size()) histogram.resize(o.histogram.size(), 0);
        for (std::size_t k = 0; k < o.histogram.size(); ++k) histogram[k] += o.histogram[k];
    }
};

template <std::size_t N, class Source>
CountMoments sample_counts(const LineSampler<N>& sampler, const Source& boundary,
                           std::uint64_t samples) {
    const IntersectionCounter<N> counter(boundary);
    CountMoments total;
    std::mutex merge_mutex;

    // All accumulators are integers, so the merge order cannot change the
    // result: any thread count yields the identical CountMoments.
    parallel_for_chunks(samples, [&](std::size_t begin, std::size_t end) {
        CountMoments m;
        m.histogram.resize(8, 0);
        for (std::size_t i = begin; i < end; ++i) {
            const int n = counter.count(sampler.sample(i));
            const std::uint64_t u = static_cast<std::uint64_t>(n);
            ++m.samples;
            m.sum_n += u;
            m.sum_n2 += u * u;
            m.sum_n3 += u * u * u;
            m.sum_n4 += u * u * u * u;
            if (n >= 3) ++m.lines_ge3;
            if (n % 2 == 1) ++m.odd_count;
            if (m.histogram.size() <= u) m.histogram.resize(u + 1, 0);
            ++m.histogram[u];
        }
        std::lock_guard<std::mutex> lock(merge_mutex);
        total.absorb(m);
    });
    return total;
}

template <std::size_t N, class Source>
void require_enclosing(const LineSampler<N>& sampler, const Source& shape) {
    const auto boundary = discretize(shape);
    for (const auto& e : boundary.elements) {
        if (norm(e.centroid - sampler.center()) + boundary.max_element_diameter >
            sampler.radius())
            throw ValidationError("BallTooSmall",
                                  "sampler ball does not enclose the boundary");
    }
}

template <std::size_t N, class Source>
CroftonEstimate estimate_impl(const LineSampler<N>& sampler, const Source& boundary,
                              std::uint64_t samples, const Calibration& alpha) {
    if (samples < 1000) throw ValidationError("BadParams", "estimate needs >= 1000 samples");
    require_enclosing(sampler, boundary);

    const CountMoments m = sample_counts(sampler, boundary, samples);
    const double s = static_cast<double>(samples);

    CroftonEstimate est;
    est.samples = samples;
    est.mean_n = static_cast<double>(m.sum_n) / s;
    est.mean_n2 = static_cast<double>(m.sum_n2) / s;
    est.mean_n_n_minus_1 = static_cast<double>(m.sum_n2 - m.sum_n) / s;
    auto se_of = [&](double mean, double mean_sq) {
        return std::sqrt(std::max(0.0, mean_sq - mean * mean) / s);
    };
    est.se_n = se_of(est.mean_n, est.mean_n2);
    est.se_n2 = se_of(est.mean_n2, static_cast<double>(m.sum_n4) / s);
    // var(n^2 - n) from E[(n^2 - n)^2] = E[n^4] - 2 E[n^3] + E[n^2]
    const double mean_nn1_sq = static_cast<double>(m.sum_n4 - 2 * m.sum_n3 + m.sum_n2) / s;
    est.se_n_n_minus_1 = se_of(est.mean_n_n_minus_1, mean_nn1_sq);
    est.histogram = m.histogram;
    est.lines_ge3 = m.lines_ge3;
    est.odd_count = m.odd_count;
    est.sampled_measure = sampler.sampled_measure();
    est.alpha_calibration = alpha.alpha;
    est.alpha_se = alpha.standard_error;
    est.area_estimate = alpha.alpha * est.mean_n * est.sampled_measure;
    est.area_se = est.sampled_measure * std::hypot(alpha.alpha * est.se_n,
                                                   alpha.standard_error * est.mean_n);
    return est;
}

} // namespace

Calibration calibrate_alpha(int dimension, std::uint64_t samples, std::uint64_t seed) {
    if (dimension != 2 && dimension != 3)
        throw ValidationError("BadDimension", "calibration supports dimensions 2 and 3");

    static std::mutex mutex;
    static std::map<std::tuple<int, std::uint64_t, std::uint64_t>, Calibration> cache;
    {
        std::lock_guard<std::mutex> lock(mutex);
        auto it = cache.find({dimension, samples, seed});
        if (it != cache.end()) return it->second;
    }

    Calibration cal;
    if (dimension == 2) {
        const PolygonBoundary circle = make_shape(ShapeKind::circle, 4096);
        const auto sampler = make_sampler(circle, seed);
        const CountMoments m = sample_counts(sampler, circle, samples);
        const double s = static_cast<double>(samples);
        const double mean_n = static_cast<double>(m.sum_n) / s;
        const double se_n =
            std::sqrt(std::max(0.0, static_cast<double>(m.sum_n2) / s - mean_n * mean_n) / s);
        cal.alpha = circle.perimeter() / (mean_n * sampler.sampled_measure());
        cal.standard_error = cal.alpha * se_n / mean_n;
    } else {
        const TriangleMeshBoundary sphere = make_sphere_mesh(5);
        const auto sampler = make_sampler(sphere, seed);
        const CountMoments m = sample_counts(sampler, sphere, samples);
        const double s = static_cast<double>(samples);
        const double mean_n = static_cast<double>(m.sum_n) / s;
        const double se_n =
            std::sqrt(std::max(0.0, static_cast<double>(m.sum_n2) / s - mean_n * mean_n) / s);
        cal.alpha = sphere.total_area() / (mean_n * sampler.sampled_measure());
        cal.standard_error = cal.alpha * se_n / mean_n;
    }

    std::lock_guard<std::mutex> lock(mutex);
    cache.emplace(std::make_tuple(dimension, samples, seed), cal);
    return cal;
}

CroftonEstimate estimate(const LineSampler<2>& sampler, const PolygonBoundary& boundary,
                         std::uint64_t samples) {
    return estimate_impl(sampler, boundary, samples, calibrate_alpha(2));
}

CroftonEstimate estimate(const LineSampler<3>& sampler, const TriangleMeshBoundary& boundary,
                         std::uint64_t samples) {
    return estimate_impl(sampler, boundary, samples, calibrate_alpha(3));
}

CroftonEstimate estimate(const LineSampler<2>& sampler, const PolygonBoundary& boundary,
                         std::uint64_t samples, const Calibration& alpha) {
    return estimate_impl(sampler, boundary, samples, alpha);
}

CroftonEstimate estimate(const LineSampler<3>& sampler, const TriangleMeshBoundary& boundary,
                         std::uint64_t samples, const Calibration& alpha) {
    return estimate_impl(sampler, boundary, samples, alpha);
}

namespace {

template <std::size_t N, class Source>
ConvexityTestResult convexity_test_impl(const LineSampler<N>& sampler, const Source& boundary,
                                        std::uint64_t samples, double significance) {
    if (samples < 10000)
        throw ValidationError("BadParams", "convexity_test needs >= 10^4 samples");
    require_enclosing(sampler, boundary);

    const CountMoments m = sample_counts(sampler, boundary, samples);
    ConvexityTestResult res;
    res.samples = samples;
    res.lines_ge3 = m.lines_ge3;
    res.null_mean = kArtifactRate * static_cast<double>(samples);
    res.p_value = poisson_upper_tail(m.lines_ge3, res.null_mean);
    if (res.p_value < significance)
        res.verdict = ConvexityVerdict::nonconvex;
    else if (static_cast<double>(m.lines_ge3) <= res.null_mean)
        res.verdict = ConvexityVerdict::convex;
    else
        res.verdict = ConvexityVerdict::inconclusive;
    return res;
}

template <std::size_t N, class Source>
CrossValidation cross_validate_impl(const LineSampler<N>& sampler, const Source& boundary,
                                    std::uint64_t samples) {
    const Calibration alpha = calibrate_alpha(static_cast<int>(N));
    const CroftonEstimate est = estimate_impl(sampler, boundary, samples, alpha);
    const double cn = c_constant(static_cast<int>(N));

    CrossValidation cv;
    cv.mc_energy_estimate = cn * alpha.alpha * est.mean_n_n_minus_1 * est.sampled_measure;
    cv.mc_se = cn * est.sampled_measure *
               std::hypot(alpha.alpha * est.se_n_n_minus_1,
                          alpha.standard_error * est.mean_n_n_minus_1);
    cv.quadrature_energy = total_energy(discretize(boundary)).energy;
    cv.relative_gap = std::abs(cv.mc_energy_estimate - cv.quadrature_energy) /
                      cv.quadrature_energy;
    return cv;
}

template <std::size_t N, class Source>
DirectionFit direction_density_impl(const LineSampler<N>& sampler, const Source& boundary,
                                    std::size_t element_index, std::uint64_t samples,
                                    unsigned bins) {
    if (bins < 8) throw ValidationError("BadParams", "need >= 8 bins");
    const auto discrete = discretize(boundary);
    if (element_index >= discrete.elements.size())
        throw ValidationError("IndexOutOfRange", "element index out of range");
    const Vec<N> normal = discrete.elements[element_index].normal;

    // target element primitive
    Vec<N> prim[3];
    double snap = 0.0;
    if constexpr (N == 2) {
        const auto& v = boundary.vertices();
        prim[0] = v[element_index];
        prim[1] = v[(element_index + 1) % v.size()];
        snap = 1e-12 * boundary.diameter();
    } else {
        const auto& t = boundary.triangles()[element_index];
        prim[0] = boundary.vertices()[t[0]];
        prim[1] = boundary.vertices()[t[1]];
        prim[2] = boundary.vertices()[t[2]];
        snap = 1e-12 * boundary.diameter() * boundary.diameter();
    }

    std::vector<std::uint64_t> counts(bins, 0);
    std::mutex merge_mutex;
    parallel_for_chunks(samples, [&](std::size_t begin, std::size_t end) {
        std::vector<std::uint64_t> local(bins, 0);
        for (std::size_t i = begin; i < end; ++i) {
            const Line<N> line = sampler.sample(i);
            bool hit;
            if constexpr (N == 2)
                hit = segment_crossed(line.point, line.direction, prim[0], prim[1], snap);
            else
                hit = triangle_crossed(line.point, line.direction, prim[0], prim[1], prim[2],
                                       snap);
            if (!hit) continue;
            const double u = std::min(1.0, std::abs(dot(line.direction, normal)));
            const double theta = std::acos(u); // incidence angle in [0, pi/2]
            auto bin = static_cast<std::size_t>(theta / (kPi / 2.0) * bins);
            if (bin >= bins) bin = bins - 1;
            ++local[bin];
        }
        std::lock_guard<std::mutex> lock(merge_mutex);
        for (unsigned b = 0; b < bins; ++b) counts[b] += local[b];
    });

    std::uint64_t hits = 0;
    for (auto c : counts) hits += c;
    if (hits < 1000)
        throw NumericError("TooFewHits", "only " + std::to_string(hits) +
                                             " conditioned hits; need >= 1000");

    auto chi2_against = [&](auto mass) {
        double stat = 0.0;
        for (unsigned b = 0; b < bins; ++b) {
            const double lo = (kPi / 2.0) * b / bins;
            const double hi = (kPi / 2.0) * (b + 1) / bins;
            const double expected = static_cast<double>(hits) * mass(lo, hi);
            const double diff = static_cast<double>(counts[b]) - expected;
            stat += diff * diff / expected;
        }
        return stat;
    };

    DirectionFit fit;
    fit.hits = hits;
    fit.bins = bins;
    if constexpr (N == 2) {
        // cosine law: density ~ cos(theta); uniform directions: flat in theta
        fit.chi2_cosine = chi2_against([](double lo, double hi) { return std::sin(hi) - std::sin(lo); });
        fit.chi2_uniform = chi2_against([](double lo, double hi) { return (hi - lo) / (kPi / 2.0); });
    } else {
        // cosine law: density ~ cos(theta) sin(theta); uniform: ~ sin(theta)
        fit.chi2_cosine = chi2_against([](double lo, double hi) {
            return std::sin(hi) * std::sin(hi) - std::sin(lo) * std::sin(lo);
        });
        fit.chi2_uniform = chi2_against([](double lo, double hi) { return std::cos(lo) - std::cos(hi); });
    }
    fit.p_cosine = chi_square_pvalue(fit.chi2_cosine, bins - 1);
    fit.p_uniform = chi_square_pvalue(fit.chi2_uniform, bins - 1);
    return fit;
}

} // namespace

ConvexityTestResult convexity_test(const LineSampler<2>& sampler, const PolygonBoundary& boundary,
                                   std::uint64_t samples, double significance) {
    return convexity_test_impl(sampler, boundary, samples, significance);
}

ConvexityTestResult convexity_test(const LineSampler<3>& sampler,
                                   const TriangleMeshBoundary& boundary, std::uint64_t samples,
                                   double significance) {
    return convexity_test_impl(sampler, boundary, samples, significance);
}

CrossValidation cross_validate_energy(const LineSampler<2>& sampler,
                                      const PolygonBoundary& boundary, std::uint64_t samples) {
    return cross_validate_impl(sampler, boundary, samples);
}

CrossValidation cross_validate_energy(const LineSampler<3>& sampler,
                                      const TriangleMeshBoundary& boundary,
                                      std::uint64_t samples) {
    return cross_validate_impl(sampler, boundary, samples);
}

DirectionFit direction_density_test(const LineSampler<2>& sampler,
                                    const PolygonBoundary& boundary, std::size_t element_index,
                                    std::uint64_t samples, unsigned bins) {
    return direction_density_impl(sampler, boundary, element_index, samples, bins);
}

DirectionFit direction_density_test(const LineSampler<3>& sampler,
                                    const TriangleMeshBoundary& boundary,
                                    std::size_t element_index, std::uint64_t samples,
                                    unsigned bins) {
    return direction_density_impl(sampler, boundary, element_index, samples, bins);
}

} // namespace convexity

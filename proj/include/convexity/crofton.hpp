#pragma once

#include <cstdint>
#include <memory>
#include <vector>

#include "convexity/geometry.hpp"
#include "convexity/vec.hpp"

namespace convexity {

// Unoriented line: point + unit direction, canonicalized so the first
// nonzero direction component is positive.
template <std::size_t N>
struct Line {
    Vec<N> point;
    Vec<N> direction;

    static Line make(const Vec<N>& point, const Vec<N>& direction);
};

using Line2 = Line<2>;
using Line3 = Line<3>;

// Realization of the kinematic measure restricted to lines meeting the ball
// B(center, radius): direction uniform on the sphere (then canonicalized),
// offset uniform on the perpendicular (N-1)-ball of radius R. The measure
// carried by the sampler is Lebesgue on the offset ball times a probability
// measure on directions, so sampled_measure() = 2R in 2D and pi R^2 in 3D;
// the Crofton constant alpha absorbs this normalization via calibration.
template <std::size_t N>
class LineSampler {
public:
    LineSampler(const Vec<N>& center, double radius, std::uint64_t seed);

    // Pure function of (seed, draw_index): reproducible in any order and
    // from any thread.
    Line<N> sample(std::uint64_t draw_index) const;

    const Vec<N>& center() const { return center_; }
    double radius() const { return radius_; }
    std::uint64_t seed() const { return seed_; }
    double sampled_measure() const;

private:
    Vec<N> center_;
    double radius_;
    std::uint64_t seed_;
};

template <std::size_t N>
Line<N> sample_line(const LineSampler<N>& sampler, std::uint64_t draw_index);

// Default sampler for a shape: center at the measure-weighted boundary
// centroid, radius 1.1x the circumradius (raised if needed so that every
// element plus its diameter fits inside).
LineSampler<2> make_sampler(const PolygonBoundary& shape, std::uint64_t seed,
                            double radius_override = 0.0);
LineSampler<3> make_sampler(const TriangleMeshBoundary& shape, std::uint64_t seed,
                            double radius_override = 0.0);

// Exact crossing count of the infinite line with the boundary; tolerance-
// snapped half-open predicates keep counts consistent at shared vertices
// and edges.
int count_intersections(const Line2& line, const PolygonBoundary& boundary);
int count_intersections(const Line3& line, const TriangleMeshBoundary& boundary);

// BVH-accelerated counter; produces identical counts to count_intersections.
template <std::size_t N>
class IntersectionCounter {
public:
    using Source = std::conditional_t<N == 2, PolygonBoundary, TriangleMeshBoundary>;

    explicit IntersectionCounter(const Source& boundary);
    ~IntersectionCounter();
    IntersectionCounter(IntersectionCounter&&) noexcept;
    IntersectionCounter& operator=(IntersectionCounter&&) noexcept;

    int count(const Line<N>& line) const;

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

struct Calibration {
    double alpha = 0.0;
    double standard_error = 0.0;
};

// Solves alpha from a reference shape of known measure (unit circle N=4096 in
// 2D, icosphere subdivision 5 in 3D). Results are cached per
// (dimension, samples, seed).
inline constexpr std::uint64_t kCalibrationSamples = 1'000'000;
inline constexpr std::uint64_t kCalibrationSeed = 0x5EEDCAFE;
Calibration calibrate_alpha(int dimension, std::uint64_t samples = kCalibrationSamples,
                            std::uint64_t seed = kCalibrationSeed);

struct CroftonEstimate {
    std::uint64_t samples = 0;
    double mean_n = 0.0;
    double mean_n2 = 0.0;
    double mean_n_n_minus_1 = 0.0;
    double se_n = 0.0;
    double se_n2 = 0.0;
    double se_n_n_minus_1 = 0.0;
    std::vector<std::uint64_t> histogram; // histogram[k] = #lines with n = k
    std::uint64_t lines_ge3 = 0;
    std::uint64_t odd_count = 0;
    double sampled_measure = 0.0;
    double alpha_calibration = 0.0;
    double alpha_se = 0.0;
    double area_estimate = 0.0; // alpha * mean_n * sampled_measure
    double area_se = 0.0;
};

CroftonEstimate estimate(const LineSampler<2>& sampler, const PolygonBoundary& boundary,
                         std::uint64_t samples);
CroftonEstimate estimate(const LineSampler<3>& sampler, const TriangleMeshBoundary& boundary,
                         std::uint64_t samples);
CroftonEstimate estimate(const LineSampler<2>& sampler, const PolygonBoundary& boundary,
                         std::uint64_t samples, const Calibration& alpha);
CroftonEstimate estimate(const LineSampler<3>& sampler, const TriangleMeshBoundary& boundary,
                         std::uint64_t samples, const Calibration& alpha);

enum class ConvexityVerdict { convex, nonconvex, inconclusive };

struct ConvexityTestResult {
    ConvexityVerdict verdict = ConvexityVerdict::inconclusive;
    std::uint64_t samples = 0;
    std::uint64_t lines_ge3 = 0; // evidence against the 0-or-2 law
    double null_mean = 0.0;      // expected artifact count under the null
    double p_value = 1.0;        // Poisson tail of lines_ge3 under the null
};

// Tolerance artifacts (near-tangent lines) are modeled as a Poisson null with
// rate <= 1e-4 per line; `significance` is the one-sided p-value required to
// declare nonconvexity. Default is the 5-sigma tail.
inline constexpr double kArtifactRate = 1e-4;
inline constexpr double kDefaultSignificance = 2.8665157187919333e-07;

ConvexityTestResult convexity_test(const LineSampler<2>& sampler, const PolygonBoundary& boundary,
                                   std::uint64_t samples,
                                   double significance = kDefaultSignificance);
ConvexityTestResult convexity_test(const LineSampler<3>& sampler,
                                   const TriangleMeshBoundary& boundary, std::uint64_t samples,
                                   double significance = kDefaultSignificance);

struct CrossValidation {
    double mc_energy_estimate = 0.0; // c_n * alpha * mean n(n-1) * measure
    double mc_se = 0.0;
    double quadrature_energy = 0.0;
    double relative_gap = 0.0;
};

CrossValidation cross_validate_energy(const LineSampler<2>& sampler,
                                      const PolygonBoundary& boundary, std::uint64_t samples);
CrossValidation cross_validate_energy(const LineSampler<3>& sampler,
                                      const TriangleMeshBoundary& boundary, std::uint64_t samples);

struct DirectionFit {
    std::uint64_t hits = 0;
    unsigned bins = 0;
    double chi2_cosine = 0.0;
    double p_cosine = 0.0;   // goodness of fit against the cosine law
    double chi2_uniform = 0.0;
    double p_uniform = 0.0;  // same histogram against uniform directions
};

// Conditions sampled lines on hitting one chosen element and tests the
// incidence-angle distribution against the cosine law (density ~ cos(theta)
// in 2D, ~ cos(theta) sin(theta) in 3D). Throws TooFewHits below 1000 hits.
DirectionFit direction_density_test(const LineSampler<2>& sampler,
                                    const PolygonBoundary& boundary, std::size_t element_index,
                                    std::uint64_t samples, unsigned bins = 8);
DirectionFit direction_density_test(const LineSampler<3>& sampler,
                                    const TriangleMeshBoundary& boundary,
                                    std::size_t element_index, std::uint64_t samples,
                                    unsigned bins = 8);

} // namespace convexity

// Acceptance suite: one check per shipped guarantee, each printed as a
// single PASS/FAIL line with the measured numbers. Exit code is the number
// of failed criteria.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "cli_support.hpp"
#include "convexity/crofton.hpp"
#include "convexity/energy.hpp"
#include "convexity/flow.hpp"
#include "convexity/geometry.hpp"
#include "convexity/io.hpp"

using namespace convexity;
using clisupport::run_cli;

constexpr double kPi = std::numbers::pi;

namespace {

int g_failures = 0;
std::vector<std::string> g_notes;

void note(const std::string& s) {
    g_notes.push_back(s);
}

void require(bool ok, const std::string& what) {
    if (!ok) {
        g_failures += 1;
        g_notes.push_back("FAILED: " + what);
    }
}

struct CriterionScope {
    int number;
    std::string label;
    int failures_before;
    std::chrono::steady_clock::time_point start;

    CriterionScope(int n, std::string l)
        : number(n), label(std::move(l)), failures_before(g_failures),
          start(std::chrono::steady_clock::now()) {
        g_notes.clear();
    }

    ~CriterionScope() {
        const double secs =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        const bool ok = g_failures == failures_before;
        std::printf("criterion %2d (%s): %s  [%.1f s]\n", number, label.c_str(),
                    ok ? "PASS" : "FAIL", secs);
        for (const auto& n : g_notes) std::printf("    %s\n", n.c_str());
        std::fflush(stdout);
    }
};

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

} // namespace

// 1. c_2 = 2 exactly, c_3 = pi to 1e-12, cross-checked by a Monte Carlo
//    average of |w_1| over the unit sphere at 1e6 samples (3 sigma).
static void criterion_constants() {
    CriterionScope scope(1, "constants");
    const auto t0 = std::chrono::steady_clock::now();
    auto two = run_cli("constant --dim 2");
    require(two.exit_code == 0 && two.out == "2.0000000000000000e+00\n",
            "CLI c_2 must print exactly 2, got '" + two.out + "'");
    auto three = run_cli("constant --dim 3");
    double c3 = 0.0;
    std::sscanf(three.out.c_str(), "%lf", &c3);
    require(std::abs(c3 - kPi) <= 1e-12, "CLI c_3 = " + fmt(c3));

    std::mt19937_64 rng(77);
    std::normal_distribution<double> gauss(0.0, 1.0);
    for (int dim : {2, 3}) {
        const int samples = 1000000;
        double sum = 0.0, sum_sq = 0.0;
        std::vector<double> w(dim);
        for (int i = 0; i < samples; ++i) {
            double n2 = 0.0;
            for (double& c : w) {
                c = gauss(rng);
                n2 += c * c;
            }
            const double a = std::abs(w[0]) / std::sqrt(n2);
            sum += a;
            sum_sq += a * a;
        }
        const double mean = sum / samples;
        const double se = std::sqrt((sum_sq / samples - mean * mean) / samples);
        const double est = 0.5 * sphere_surface_area(dim) * mean;
        const double se_est = 0.5 * sphere_surface_area(dim) * se;
        require(std::abs(est - c_constant(dim)) <= 3.0 * se_est,
                "MC check dim " + std::to_string(dim) + ": " + fmt(est) + " vs " +
                    fmt(c_constant(dim)) + " (3se = " + fmt(3.0 * se_est) + ")");
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    require(secs < 1.0, "runtime " + fmt(secs) + " s exceeds 1 s");
}

// 2. Equality on the ball: circle N=2048 within 1e-3 of 4*pi; icosphere
//    subdivision 5 within 1e-2 of c_3 * mesh area. Runtime < 2 min.
static void criterion_ball_equality() {
    CriterionScope scope(2, "equality on the ball");
    const auto t0 = std::chrono::steady_clock::now();

    auto circle = total_energy(discretize(make_shape(ShapeKind::circle, 2048)));
    const double circle_gap = std::abs(circle.energy - 4.0 * kPi) / (4.0 * kPi);
    require(circle_gap < 1e-3, "circle N=2048 relative gap " + fmt(circle_gap));
    note("circle N=2048: |E - 4pi|/4pi = " + fmt(circle_gap));

    auto sphere = total_energy(discretize(make_sphere_mesh(5)));
    const double target = kPi * sphere.boundary_measure;
    const double sphere_gap = std::abs(sphere.energy - target) / target;
    require(sphere_gap < 1e-2, "icosphere subdiv 5 relative gap " + fmt(sphere_gap));
    note("icosphere subdiv 5: |E - c3*A|/(c3*A) = " + fmt(sphere_gap));

    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    require(secs < 120.0, "runtime " + fmt(secs) + " s exceeds 2 min");
}

// 3. Characterization over the shape suite: convex shapes reach |defect| <
//    5e-3, star and kidney stay above 0.05 and stable within 5% across two
//    refinement levels, and defect-based verdicts agree with the oracle.
static void criterion_characterization() {
    CriterionScope scope(3, "convexity characterization");

    // reference values recorded from an independent brute-force refinement
    // study of the discrete pair sum
    const double star_ref_400 = 1.467251;
    const double star_ref_800 = 1.450414;
    const double kidney_ref_400 = 0.105797;
    const double kidney_ref_800 = 0.105786;

    struct Entry {
        std::string name;
        PolygonBoundary shape;
        bool convex;
    };
    auto hull400 = refine(convex_hull(make_shape(ShapeKind::star, 400)), 80);
    std::vector<Entry> suite;
    suite.push_back({"circle", make_shape(ShapeKind::circle, 1024), true});
    suite.push_back({"ellipse", make_shape(ShapeKind::ellipse, 1024), true});
    suite.push_back({"square", make_shape(ShapeKind::square, 1024), true});
    suite.push_back({"hull-of-star", hull400, true});
    suite.push_back({"star", make_shape(ShapeKind::star, 400), false});
    suite.push_back({"kidney", make_shape(ShapeKind::kidney, 400), false});

    for (const auto& e : suite) {
        auto report = total_energy(discretize(e.shape));
        if (e.convex) {
            require(std::abs(report.defect) < 5e-3,
                    e.name + " defect " + fmt(report.defect) + " not < 5e-3");
        } else {
            require(report.defect > 0.05, e.name + " defect " + fmt(report.defect));
        }
        note(e.name + ": defect = " + fmt(report.defect));
        const bool verdict_convex = std::abs(report.defect) < report.tolerance;
        require(verdict_convex == is_convex_oracle(e.shape),
                e.name + " verdict disagrees with the convexity oracle");
    }

    const double star400 = defect(discretize(make_shape(ShapeKind::star, 400)));
    const double star800 = defect(discretize(make_shape(ShapeKind::star, 800)));
    require(std::abs(star400 - star800) / star800 < 0.05, "star refinement stability");
    require(std::abs(star400 - star_ref_400) / star_ref_400 < 0.01, "star N=400 reference");
    require(std::abs(star800 - star_ref_800) / star_ref_800 < 0.01, "star N=800 reference");

    const double kid400 = defect(discretize(make_shape(ShapeKind::kidney, 400)));
    const double kid800 = defect(discretize(make_shape(ShapeKind::kidney, 800)));
    require(std::abs(kid400 - kid800) / kid800 < 0.05, "kidney refinement stability");
    require(std::abs(kid400 - kidney_ref_400) / kidney_ref_400 < 0.01, "kidney N=400 reference");
    require(std::abs(kid800 - kidney_ref_800) / kidney_ref_800 < 0.01, "kidney N=800 reference");
}

// 4. Pointwise boundary identity: the integral equals c_2
//    within 2e-2 at 32 probes spread over the ellipse.
static void criterion_pointwise_boundary() {
    CriterionScope scope(4, "pointwise boundary identity");
    auto b = discretize(make_shape(ShapeKind::ellipse, 2048));
    double worst = 0.0;
    for (int k = 0; k < 32; ++k) {
        const double v = pointwise_boundary(b, static_cast<std::size_t>(k) * 64);
        worst = std::max(worst, std::abs(v - 2.0));
    }
    require(worst <= 2e-2, "worst probe gap " + fmt(worst));
    note("worst |value - c_2| over 32 probes: " + fmt(worst));
}

// 5. Pointwise interior identity: the integral equals 2*c_n at arbitrary
//    interior points and directions.
static void criterion_pointwise_interior() {
    CriterionScope scope(5, "pointwise interior identity");
    auto b = discretize(make_shape(ShapeKind::circle, 1024));
    const std::vector<Vec2> points = {{0, 0}, {0.3, -0.2}, {-0.4, 0.1}, {0.2, 0.35}, {-0.25, -0.3}};
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    const std::vector<Vec2> dirs = {{1, 0}, {0, 1}, {inv_sqrt2, inv_sqrt2}, {-0.6, 0.8}};
    double worst = 0.0;
    for (const auto& x : points)
        for (const auto& w : dirs)
            worst = std::max(worst, std::abs(pointwise_interior(b, x, w) - 4.0));
    require(worst <= 2e-2, "worst 2D interior gap " + fmt(worst));
    note("worst |value - 2c_2| over 20 probes: " + fmt(worst));

    auto m = discretize(make_sphere_mesh(4));
    const double v = pointwise_interior(m, {0, 0, 0}, {0, 0, 1});
    const double gap = std::abs(v - 2.0 * kPi) / (2.0 * kPi);
    require(gap <= 0.02, "sphere center gap " + fmt(gap));
    note("icosphere subdiv 4 center: relative gap " + fmt(gap));
}

// 6. Crofton area: ellipse perimeter within 2% at 1e6 lines after circle
//    calibration; seed-stable within 3 combined standard errors; < 1 min.
static void criterion_crofton_area() {
    CriterionScope scope(6, "crofton area estimate");
    const auto t0 = std::chrono::steady_clock::now();
    auto cal = calibrate_alpha(2);
    auto ellipse = make_shape(ShapeKind::ellipse, 2048);
    std::vector<CroftonEstimate> runs;
    for (std::uint64_t seed : {1001, 2002, 3003}) {
        auto est = estimate(make_sampler(ellipse, seed), ellipse, 1000000, cal);
        const double gap = std::abs(est.area_estimate - ellipse.perimeter()) / ellipse.perimeter();
        require(gap < 0.02, "seed " + std::to_string(seed) + " gap " + fmt(gap));
        note("seed " + std::to_string(seed) + ": estimate " + fmt(est.area_estimate) +
             " (true " + fmt(ellipse.perimeter()) + ", gap " + fmt(gap) + ")");
        runs.push_back(est);
    }
    for (std::size_t i = 0; i < runs.size(); ++i)
        for (std::size_t j = i + 1; j < runs.size(); ++j)
            require(std::abs(runs[i].area_estimate - runs[j].area_estimate) <=
                        3.0 * std::hypot(runs[i].area_se, runs[j].area_se),
                    "seeds " + std::to_string(i) + "," + std::to_string(j) + " differ beyond 3 SE");
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    require(secs < 60.0, "runtime " + fmt(secs) + " s exceeds 1 min");
}

// 7. 0-or-2 law: circle lines hit 0 or 2 times (mass >= 0.999); the star shows
//    counts >= 3 on more than 1% of lines and a 5-sigma nonconvex verdict.
static void criterion_crossing_law() {
    CriterionScope scope(7, "0-or-2 crossing law");
    auto cal = calibrate_alpha(2);
    auto circle = make_shape(ShapeKind::circle, 512);
    auto ce = estimate(make_sampler(circle, 21), circle, 1000000, cal);
    const double mass02 =
        static_cast<double>(ce.histogram[0] + ce.histogram[2]) / static_cast<double>(ce.samples);
    require(mass02 >= 0.999, "circle mass on {0,2} = " + fmt(mass02));
    note("circle mass on {0,2}: " + fmt(mass02));

    auto star = make_shape(ShapeKind::star, 400);
    auto se = estimate(make_sampler(star, 21), star, 1000000, cal);
    const double mass_ge3 = static_cast<double>(se.lines_ge3) / static_cast<double>(se.samples);
    require(mass_ge3 > 0.01, "star mass on counts >= 3 = " + fmt(mass_ge3));
    note("star mass on counts >= 3: " + fmt(mass_ge3));
    auto verdict = convexity_test(make_sampler(star, 21), star, 1000000);
    require(verdict.verdict == ConvexityVerdict::nonconvex, "star verdict must be nonconvex");
}

// 8. Proof-chain cross-validation: the line-sampling energy estimate
//    c_n * alpha * E[n(n-1)] * measure matches quadrature.
static void criterion_cross_validation() {
    CriterionScope scope(8, "energy cross-validation");
    auto circle = make_shape(ShapeKind::circle, 1024);
    auto cv = cross_validate_energy(make_sampler(circle, 31), circle, 1000000);
    require(cv.relative_gap < 0.03, "circle gap " + fmt(cv.relative_gap));
    note("circle: mc " + fmt(cv.mc_energy_estimate) + " vs quad " + fmt(cv.quadrature_energy) +
         " (gap " + fmt(cv.relative_gap) + ")");

    auto star = make_shape(ShapeKind::star, 400);
    auto cvs = cross_validate_energy(make_sampler(star, 31), star, 1000000);
    require(cvs.relative_gap < 0.05, "star gap " + fmt(cvs.relative_gap));
    note("star: gap " + fmt(cvs.relative_gap));

    auto mesh = make_sphere_mesh(4);
    auto cvm = cross_validate_energy(make_sampler(mesh, 31), mesh, 1000000);
    require(cvm.relative_gap < 0.05, "icosphere gap " + fmt(cvm.relative_gap));
    note("icosphere subdiv 4: gap " + fmt(cvm.relative_gap));
}

// 9. Direction density: cosine law accepted at p > 0.01 with >= 1e4
//    conditioned hits; the uniform-direction null rejected at p < 1e-6.
static void criterion_direction_density() {
    CriterionScope scope(9, "direction density");
    auto square = make_shape(ShapeKind::square, 64);
    auto fit = direction_density_test(make_sampler(square, 13), square, 5, 400000);
    require(fit.hits >= 10000, "hits " + std::to_string(fit.hits));
    require(fit.p_cosine > 0.01, "cosine-law p = " + fmt(fit.p_cosine));
    require(fit.p_uniform < 1e-6, "uniform-null p = " + fmt(fit.p_uniform));
    note("hits " + std::to_string(fit.hits) + ", cosine p " + fmt(fit.p_cosine) +
         ", uniform p " + fmt(fit.p_uniform));
}

// 10. Flow: the star run converges below 1e-2 to an oracle-convex shape;
//     analytic and finite-difference gradients agree; convex inputs are
//     fixed points.
static void criterion_flow() {
    CriterionScope scope(10, "defect-minimizing flow");
    auto star = make_shape(ShapeKind::star, 100);
    FlowParams params;
    params.step_size = 1e-2;
    params.stop_defect = 1e-3;
    params.max_iterations = 2000;
    auto trace = convexify(star, params);
    require(trace.converged, "star flow did not converge");
    require(trace.iterations.back().defect < 1e-2,
            "final defect " + fmt(trace.iterations.back().defect));
    require(is_convex_oracle(trace.final_shape), "final shape fails the convexity oracle");
    note("star N=100: defect " + fmt(trace.iterations.back().defect) + " after " +
         std::to_string(trace.iterations.back().iteration) + " iterations");

    auto star50 = make_shape(ShapeKind::star, 50);
    auto analytic = defect_gradient(star50, GradientMode::analytic, 1e-6);
    auto fd = defect_gradient(star50, GradientMode::finite_difference, 1e-6);
    double gnorm = 0.0, max_diff = 0.0;
    for (std::size_t i = 0; i < analytic.size(); ++i) {
        gnorm += dot(analytic[i], analytic[i]);
        max_diff = std::max({max_diff, std::abs(analytic[i].x() - fd[i].x()),
                             std::abs(analytic[i].y() - fd[i].y())});
    }
    gnorm = std::sqrt(gnorm);
    require(max_diff < 1e-5 * gnorm,
            "gradient check: max diff " + fmt(max_diff) + " vs norm " + fmt(gnorm));
    note("gradient check: max component diff / norm = " + fmt(max_diff / gnorm));

    auto circle = make_shape(ShapeKind::circle, 64);
    FlowParams defaults;
    auto fixed = convexify(circle, defaults);
    require(fixed.converged && fixed.iterations.back().iteration <= 1,
            "convex input must converge immediately");
    double disp = 0.0;
    for (std::size_t i = 0; i < circle.size(); ++i)
        disp = std::max(disp, norm(fixed.final_shape.vertices()[i] - circle.vertices()[i]));
    require(disp <= defaults.fd_epsilon * circle.diameter(),
            "convex input moved by " + fmt(disp));
}

// 11. Determinism: identical argv and seed produce byte-identical stdout for
//     every subcommand at different thread counts.
static void criterion_determinism() {
    CriterionScope scope(11, "thread-count determinism");
    run_cli("gen --shape star --resolution 150 -o acc_star.json");
    run_cli("gen --shape circle --resolution 200 -o acc_circle.json");
    run_cli("gen --shape sphere --resolution 2 -o acc_sphere.obj");
    const std::vector<std::string> commands = {
        "constant --dim 3",
        "gen --shape kidney --resolution 96 -o acc_gen.json",
        "energy -i acc_star.json",
        "energy -i acc_sphere.obj",
        "pointwise -i acc_star.json --boundary-index 7",
        "pointwise -i acc_circle.json --at 0.1,0.2 --direction 1,0",
        "crofton -i acc_star.json --lines 50000 --seed 11",
        "crossval -i acc_circle.json --lines 50000 --seed 11",
        "convexity -i acc_star.json --method crofton --lines 50000 --seed 11",
        "convexity -i acc_circle.json --method defect",
        "flow -i acc_star.json --steps 40 --lr 5e-3 -o acc_flow.json --trace acc_trace.csv",
    };
    for (const auto& cmd : commands) {
        auto one = run_cli(cmd + " --threads 1");
        auto three = run_cli(cmd + " --threads 3");
        require(one.exit_code == 0, "command failed: " + cmd);
        require(one.exit_code == three.exit_code && one.out == three.out,
                "stdout differs across thread counts for: " + cmd);
    }
    note("11 subcommand invocations byte-identical at --threads 1 vs 3");
}

int main() {
    std::printf("acceptance suite\n");
    const auto t0 = std::chrono::steady_clock::now();
    criterion_constants();
    criterion_ball_equality();
    criterion_characterization();
    criterion_pointwise_boundary();
    criterion_pointwise_interior();
    criterion_crofton_area();
    criterion_crossing_law();
    criterion_cross_validation();
    criterion_direction_density();
    criterion_flow();
    criterion_determinism();
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::printf("%s (%d failed), total %.1f s\n", g_failures == 0 ? "ALL PASS" : "FAILURES",
                g_failures, secs);
    return g_failures;
}

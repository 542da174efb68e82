#include <charconv>
#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "convexity/crofton.hpp"
#include "convexity/energy.hpp"
#include "convexity/errors.hpp"
#include "convexity/flow.hpp"
#include "convexity/geometry.hpp"
#include "convexity/io.hpp"
#include "convexity/parallel.hpp"
#include "convexity/svg.hpp"

namespace cx = convexity;

namespace {

// Machine-first output: JSON on stdout, one-line human summaries on stderr.

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw cx::ValidationError("IoError", "cannot write " + path);
    out << content;
}

std::vector<double> parse_csv_doubles(const std::string& text, const char* what) {
    std::vector<double> out;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t comma = text.find(',', pos);
        std::string tok = text.substr(pos, comma == std::string::npos ? comma : comma - pos);
        double v = 0.0;
        auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
        if (ec != std::errc{} || ptr != tok.data() + tok.size())
            throw cx::ValidationError("BadParams", std::string("bad ") + what + " '" + tok + "'");
        out.push_back(v);
        if (comma == std::string::npos) break;
        pos = comma + 1;
    }
    return out;
}

struct LoadedShape {
    std::optional<cx::PolygonBoundary> polygon;
    std::optional<cx::TriangleMeshBoundary> mesh;
};

LoadedShape load_shape(const std::string& path) {
    LoadedShape s;
    if (cx::is_mesh_path(path))
        s.mesh = cx::read_mesh_obj(path);
    else
        s.polygon = cx::read_polygon_json(path);
    return s;
}

std::string json_kv(const std::string& key, double v) {
    return "\"" + key + "\": " + cx::format_double(v);
}

std::string energy_report_json(const cx::EnergyReport& r) {
    return "{" + json_kv("energy", r.energy) + ", " + json_kv("boundary_measure", r.boundary_measure) +
           ", " + json_kv("c_n", r.c_n) + ", " + json_kv("defect", r.defect) +
           ", \"element_count\": " + std::to_string(r.element_count) + "}\n";
}

std::string estimate_json(const cx::CroftonEstimate& e) {
    std::string hist;
    for (std::size_t k = 0; k < e.histogram.size(); ++k) {
        if (k) hist += ", ";
        hist += std::to_string(e.histogram[k]);
    }
    return "{\"samples\": " + std::to_string(e.samples) + ", " + json_kv("mean_n", e.mean_n) +
           ", " + json_kv("mean_n2", e.mean_n2) + ", " +
           json_kv("mean_n_n_minus_1", e.mean_n_n_minus_1) + ", " + json_kv("se_n", e.se_n) +
           ", " + json_kv("se_n2", e.se_n2) + ", " + json_kv("se_n_n_minus_1", e.se_n_n_minus_1) +
           ", \"histogram\": [" + hist + "], \"lines_ge3\": " + std::to_string(e.lines_ge3) +
           ", " + json_kv("sampled_measure", e.sampled_measure) + ", " +
           json_kv("alpha_calibration", e.alpha_calibration) + ", " +
           json_kv("alpha_se", e.alpha_se) + ", " + json_kv("area_estimate", e.area_estimate) +
           ", " + json_kv("area_se", e.area_se) + "}\n";
}

const char* verdict_name(cx::ConvexityVerdict v) {
    switch (v) {
    case cx::ConvexityVerdict::convex: return "convex";
    case cx::ConvexityVerdict::nonconvex: return "nonconvex";
    default: return "inconclusive";
    }
}

int run(int argc, char** argv) {
    CLI::App app{"Boundary interaction energy, convexity defect, and Crofton line statistics"};
    app.require_subcommand(1);
    app.fallthrough(); // let global options appear after the subcommand
    unsigned threads = 0;
    app.add_option("--threads", threads,
                   "cap worker threads (results are independent of this value)");

    // gen
    auto* gen = app.add_subcommand("gen", "generate a shape file");
    std::string gen_shape;
    int gen_resolution = 64;
    std::string gen_out, gen_svg;
    cx::ShapeParams gen_params;
    gen->add_option("--shape", gen_shape, "circle|ellipse|star|kidney|square|sphere")->required();
    gen->add_option("--resolution", gen_resolution,
                    "vertex count (2D) or icosphere subdivisions (sphere)");
    gen->add_option("-o,--output", gen_out, "output file (.json polygon, .obj mesh)")->required();
    gen->add_option("--radius", gen_params.radius, "circle radius");
    gen->add_option("--a", gen_params.a, "ellipse semi-axis a");
    gen->add_option("--b", gen_params.b, "ellipse semi-axis b");
    gen->add_option("--outer", gen_params.outer, "star outer radius");
    gen->add_option("--inner", gen_params.inner, "star inner radius");
    gen->add_option("--points", gen_params.points, "star points");
    gen->add_option("--side", gen_params.side, "square side length");
    gen->add_option("--svg", gen_svg, "also render the shape to this SVG file (2D only)");

    // constant
    auto* constant = app.add_subcommand("constant", "print the equality constant c_n");
    int const_dim = 2;
    constant->add_option("--dim", const_dim, "dimension n >= 2")->required();

    // energy
    auto* energy = app.add_subcommand("energy", "energy, boundary measure, and defect");
    std::string energy_in, energy_svg;
    int energy_refine = 1;
    energy->add_option("-i,--input", energy_in, "shape file")->required();
    energy->add_option("--refine", energy_refine, "refine the shape by this factor first");
    energy->add_option("--svg", energy_svg,
                       "render edges colored by their pointwise boundary integral (2D only)");

    // pointwise
    auto* pointwise = app.add_subcommand("pointwise", "pointwise kernel integrals");
    std::string pw_in, pw_at, pw_dir;
    long long pw_index = -1;
    pointwise->add_option("-i,--input", pw_in, "shape file")->required();
    pointwise->add_option("--boundary-index", pw_index, "element index for the boundary identity");
    pointwise->add_option("--at", pw_at, "interior point x,y[,z]");
    pointwise->add_option("--direction", pw_dir, "unit direction dx,dy[,dz]");

    // crofton
    auto* crofton = app.add_subcommand("crofton", "Monte Carlo line statistics and area estimate");
    std::string cr_in;
    std::uint64_t cr_lines = 1000000, cr_seed = 0;
    double cr_radius = 0.0;
    crofton->add_option("-i,--input", cr_in, "shape file")->required();
    crofton->add_option("--lines", cr_lines, "number of sampled lines");
    crofton->add_option("--seed", cr_seed, "RNG seed (default 0)");
    crofton->add_option("--radius", cr_radius, "sampling ball radius override");

    // crossval
    auto* crossval = app.add_subcommand("crossval", "line-sampling vs quadrature energy");
    std::string cv_in;
    std::uint64_t cv_lines = 1000000, cv_seed = 0;
    crossval->add_option("-i,--input", cv_in, "shape file")->required();
    crossval->add_option("--lines", cv_lines, "number of sampled lines");
    crossval->add_option("--seed", cv_seed, "RNG seed (default 0)");

    // convexity
    auto* convexity_cmd = app.add_subcommand("convexity", "convexity verdict");
    std::string cxv_in, cxv_method = "defect";
    std::uint64_t cxv_lines = 100000, cxv_seed = 0;
    double cxv_significance = cx::kDefaultSignificance;
    convexity_cmd->add_option("-i,--input", cxv_in, "shape file")->required();
    convexity_cmd->add_option("--method", cxv_method, "defect|crofton");
    convexity_cmd->add_option("--lines", cxv_lines, "lines for the crofton method");
    convexity_cmd->add_option("--seed", cxv_seed, "RNG seed (default 0)");
    convexity_cmd->add_option("--significance", cxv_significance,
                              "one-sided p-value threshold (default 5 sigma)");

    // flow
    auto* flow = app.add_subcommand("flow", "defect-minimizing vertex descent (2D)");
    std::string fl_in, fl_out, fl_trace, fl_gradient = "analytic";
    cx::FlowParams fl_params;
    flow->add_option("-i,--input", fl_in, "polygon file")->required();
    flow->add_option("-o,--output", fl_out, "output polygon file")->required();
    flow->add_option("--steps", fl_params.max_iterations, "max iterations");
    flow->add_option("--lr", fl_params.step_size, "descent step size");
    flow->add_option("--stop", fl_params.stop_defect, "stop when defect drops below this");
    flow->add_option("--fd-epsilon", fl_params.fd_epsilon, "relative finite-difference step");
    flow->add_option("--gradient", fl_gradient, "analytic|fd");
    flow->add_flag_callback("--no-redistribution",
                            [&] { fl_params.tangential_redistribution = false; },
                            "disable tangential redistribution");
    flow->add_option("--trace", fl_trace, "write per-iteration CSV trace here");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e); // --help and friends
        std::cerr << "error: BadArguments: " << e.get_name() << "\n";
        return 2;
    }

    if (threads != 0) cx::set_thread_override(threads);

    if (*gen) {
        if (gen_shape == "sphere") {
            auto mesh = cx::make_sphere_mesh(gen_resolution);
            if (!gen_svg.empty())
                throw cx::ValidationError("DimensionUnsupported", "SVG rendering is 2D only");
            cx::write_mesh_obj(gen_out, mesh);
            std::cout << "{\"shape\": \"sphere\", \"elements\": " << mesh.triangles().size()
                      << ", " << json_kv("measure", mesh.total_area()) << "}\n";
            std::cerr << "gen: wrote " << gen_out << " (" << mesh.triangles().size()
                      << " triangles)\n";
            return 0;
        }
        cx::ShapeKind kind;
        if (gen_shape == "circle") kind = cx::ShapeKind::circle;
        else if (gen_shape == "ellipse") kind = cx::ShapeKind::ellipse;
        else if (gen_shape == "star") kind = cx::ShapeKind::star;
        else if (gen_shape == "kidney") kind = cx::ShapeKind::kidney;
        else if (gen_shape == "square") kind = cx::ShapeKind::square;
        else throw cx::ValidationError("BadParams", "unknown shape '" + gen_shape + "'");
        auto poly = cx::make_shape(kind, gen_resolution, gen_params);
        cx::write_polygon_json(gen_out, poly);
        if (!gen_svg.empty()) write_text_file(gen_svg, cx::render_svg(poly));
        std::cout << "{\"shape\": \"" << gen_shape << "\", \"elements\": " << poly.size() << ", "
                  << json_kv("measure", poly.perimeter()) << "}\n";
        std::cerr << "gen: wrote " << gen_out << " (" << poly.size() << " vertices)\n";
        return 0;
    }

    if (*constant) {
        std::cout << cx::format_double(cx::c_constant(const_dim)) << "\n";
        return 0;
    }

    if (*energy) {
        auto shape = load_shape(energy_in);
        cx::EnergyReport report;
        if (shape.polygon) {
            auto poly = energy_refine > 1 ? cx::refine(*shape.polygon, energy_refine)
                                          : *shape.polygon;
            auto boundary = cx::discretize(poly);
            report = cx::total_energy(boundary);
            if (!energy_svg.empty()) {
                std::vector<double> values(boundary.elements.size());
                for (std::size_t i = 0; i < values.size(); ++i)
                    values[i] = cx::pointwise_boundary(boundary, i);
                write_text_file(energy_svg, cx::render_svg(poly, &values));
            }
        } else {
            auto mesh = energy_refine > 1 ? cx::refine(*shape.mesh, energy_refine) : *shape.mesh;
            if (!energy_svg.empty())
                throw cx::ValidationError("DimensionUnsupported", "SVG rendering is 2D only");
            report = cx::total_energy(cx::discretize(mesh));
        }
        std::cout << energy_report_json(report);
        std::cerr << "energy: defect " << cx::format_double(report.defect)
                  << " (discretization tolerance " << cx::format_double(report.tolerance)
                  << ")\n";
        return 0;
    }

    if (*pointwise) {
        auto shape = load_shape(pw_in);
        const bool boundary_mode = pw_index >= 0;
        if (!boundary_mode && (pw_at.empty() || pw_dir.empty()))
            throw cx::ValidationError("BadParams",
                                      "need --boundary-index or both --at and --direction");
        double value = 0.0, expected = 0.0;
        if (shape.polygon) {
            auto boundary = cx::discretize(*shape.polygon);
            expected = cx::c_constant(2);
            if (boundary_mode) {
                value = cx::pointwise_boundary(boundary, static_cast<std::size_t>(pw_index));
            } else {
                auto at = parse_csv_doubles(pw_at, "coordinate");
                auto dir = parse_csv_doubles(pw_dir, "direction");
                if (at.size() != 2 || dir.size() != 2)
                    throw cx::ValidationError("BadParams", "2D shape needs x,y and dx,dy");
                value = cx::pointwise_interior(boundary, {at[0], at[1]},
                                               cx::normalized(cx::Vec2{dir[0], dir[1]}));
                expected *= 2.0;
            }
        } else {
            auto boundary = cx::discretize(*shape.mesh);
            expected = cx::c_constant(3);
            if (boundary_mode) {
                value = cx::pointwise_boundary(boundary, static_cast<std::size_t>(pw_index));
            } else {
                auto at = parse_csv_doubles(pw_at, "coordinate");
                auto dir = parse_csv_doubles(pw_dir, "direction");
                if (at.size() != 3 || dir.size() != 3)
                    throw cx::ValidationError("BadParams", "3D shape needs x,y,z and dx,dy,dz");
                value = cx::pointwise_interior(boundary, {at[0], at[1], at[2]},
                                               cx::normalized(cx::Vec3{dir[0], dir[1], dir[2]}));
                expected *= 2.0;
            }
        }
        std::cout << "{" << json_kv("value", value) << ", " << json_kv("expected", expected)
                  << ", " << json_kv("gap", value - expected) << "}\n";
        std::cerr << "pointwise: gap " << cx::format_double(value - expected) << "\n";
        return 0;
    }

    if (*crofton) {
        auto shape = load_shape(cr_in);
        cx::CroftonEstimate est;
        if (shape.polygon) {
            auto sampler = cx::make_sampler(*shape.polygon, cr_seed, cr_radius);
            est = cx::estimate(sampler, *shape.polygon, cr_lines);
        } else {
            auto sampler = cx::make_sampler(*shape.mesh, cr_seed, cr_radius);
            est = cx::estimate(sampler, *shape.mesh, cr_lines);
        }
        std::cout << estimate_json(est);
        std::cerr << "crofton: area estimate " << cx::format_double(est.area_estimate) << " +- "
                  << cx::format_double(est.area_se) << "\n";
        return 0;
    }

    if (*crossval) {
        auto shape = load_shape(cv_in);
        cx::CrossValidation cv;
        if (shape.polygon) {
            auto sampler = cx::make_sampler(*shape.polygon, cv_seed);
            cv = cx::cross_validate_energy(sampler, *shape.polygon, cv_lines);
        } else {
            auto sampler = cx::make_sampler(*shape.mesh, cv_seed);
            cv = cx::cross_validate_energy(sampler, *shape.mesh, cv_lines);
        }
        std::cout << "{" << json_kv("mc_energy_estimate", cv.mc_energy_estimate) << ", "
                  << json_kv("mc_se", cv.mc_se) << ", "
                  << json_kv("quadrature_energy", cv.quadrature_energy) << ", "
                  << json_kv("relative_gap", cv.relative_gap) << "}\n";
        std::cerr << "crossval: relative gap " << cx::format_double(cv.relative_gap) << "\n";
        return 0;
    }

    if (*convexity_cmd) {
        auto shape = load_shape(cxv_in);
        if (cxv_method == "defect") {
            cx::EnergyReport report;
            if (shape.polygon)
                report = cx::total_energy(cx::discretize(*shape.polygon));
            else
                report = cx::total_energy(cx::discretize(*shape.mesh));
            const bool convex = std::abs(report.defect) < report.tolerance;
            std::cout << "{\"method\": \"defect\", " << json_kv("defect", report.defect) << ", "
                      << json_kv("threshold", report.tolerance) << ", \"verdict\": \""
                      << (convex ? "convex" : "nonconvex") << "\"}\n";
            std::cerr << "convexity: " << (convex ? "convex" : "nonconvex") << "\n";
        } else if (cxv_method == "crofton") {
            cx::ConvexityTestResult res;
            if (shape.polygon) {
                auto sampler = cx::make_sampler(*shape.polygon, cxv_seed);
                res = cx::convexity_test(sampler, *shape.polygon, cxv_lines, cxv_significance);
            } else {
                auto sampler = cx::make_sampler(*shape.mesh, cxv_seed);
                res = cx::convexity_test(sampler, *shape.mesh, cxv_lines, cxv_significance);
            }
            std::cout << "{\"method\": \"crofton\", \"lines_ge3\": " << res.lines_ge3 << ", "
                      << json_kv("null_mean", res.null_mean) << ", "
                      << json_kv("p_value", res.p_value) << ", \"verdict\": \""
                      << verdict_name(res.verdict) << "\"}\n";
            std::cerr << "convexity: " << verdict_name(res.verdict) << "\n";
        } else {
            throw cx::ValidationError("BadParams", "method must be defect or crofton");
        }
        return 0;
    }

    if (*flow) {
        if (cx::is_mesh_path(fl_in))
            throw cx::ValidationError("DimensionUnsupported", "flow supports 2D polygons only");
        if (fl_gradient == "fd" || fl_gradient == "finite_difference")
            fl_params.gradient_mode = cx::GradientMode::finite_difference;
        else if (fl_gradient == "analytic")
            fl_params.gradient_mode = cx::GradientMode::analytic;
        else
            throw cx::ValidationError("BadParams", "gradient must be analytic or fd");
        auto poly = cx::read_polygon_json(fl_in);
        auto trace = cx::convexify(poly, fl_params);
        cx::write_polygon_json(fl_out, trace.final_shape);
        if (!fl_trace.empty()) write_text_file(fl_trace, cx::trace_to_csv(trace));
        const auto& last = trace.iterations.back();
        std::cout << "{\"iterations\": " << last.iteration << ", "
                  << json_kv("final_defect", last.defect) << ", "
                  << json_kv("final_perimeter", last.perimeter) << ", \"converged\": "
                  << (trace.converged ? "true" : "false") << "}\n";
        std::cerr << "flow: " << (trace.converged ? "converged" : "stopped") << " at defect "
                  << cx::format_double(last.defect) << "\n";
        return 0;
    }

    return 2; // unreachable: require_subcommand

}

} // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const cx::ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n"; // what() is "<kind>: <detail>"
        return 2;
    } catch (const cx::NumericError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: Internal: " << e.what() << "\n";
        return 3;
    }
}

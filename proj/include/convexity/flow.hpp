#pragma once

#include <vector>

#include "convexity/geometry.hpp"
#include "convexity/vec.hpp"

namespace convexity {

enum class GradientMode { finite_difference, analytic };

struct FlowParams {
    double step_size = 1e-2;
    int max_iterations = 2000;
    GradientMode gradient_mode = GradientMode::analytic;
    double fd_epsilon = 1e-6;              // relative to the shape diameter
    bool tangential_redistribution = true; // equalize spacing without normal motion
    double stop_defect = 2e-3;
};

struct FlowIteration {
    int iteration = 0;
    double defect = 0.0;
    double perimeter = 0.0;
    double max_displacement = 0.0;
};

struct FlowTrace {
    std::vector<FlowIteration> iterations;
    PolygonBoundary final_shape;
    bool converged = false;
};

// Gradient of the defect with respect to the vertex positions. The analytic
// mode differentiates the discrete pair sum directly and matches central
// finite differences to first order.
std::vector<Vec2> defect_gradient(const PolygonBoundary& shape, GradientMode mode,
                                  double fd_epsilon);

// Gradient descent on the defect. Steps that would self-intersect are halved
// up to 20 times; optional tangential redistribution follows each step.
// Converged means the defect dropped below params.stop_defect.
FlowTrace convexify(const PolygonBoundary& shape, const FlowParams& params);

// CSV serialization of the trace: iteration,defect,perimeter,max_displacement.
std::string trace_to_csv(const FlowTrace& trace);

} // namespace convexity

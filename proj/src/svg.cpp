#include "convexity/svg.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>

#include "convexity/errors.hpp"
#include "convexity/io.hpp"

namespace convexity {

namespace {

// Fixed-precision coordinate formatting, deterministic and compact.
std::string fmt(double v) {
    char buf[40];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::fixed, 6);
    return std::string(buf, ptr);
}

std::string color_for(double t) {
    // linear blue (low) -> red (high)
    const int r = static_cast<int>(std::lround(255.0 * t));
    const int b = static_cast<int>(std::lround(255.0 * (1.0 - t)));
    return "rgb(" + std::to_string(r) + ",0," + std::to_string(b) + ")";
}

} // namespace

std::string render_svg(const PolygonBoundary& shape, const std::vector<double>* values) {
    const auto& v = shape.vertices();
    if (values && values->size() != v.size())
        throw ValidationError("BadParams", "need one value per edge");

    double lo_x = v[0].x(), hi_x = v[0].x(), lo_y = v[0].y(), hi_y = v[0].y();
    for (const auto& p : v) {
        lo_x = std::min(lo_x, p.x());
        hi_x = std::max(hi_x, p.x());
        lo_y = std::min(lo_y, p.y());
        hi_y = std::max(hi_y, p.y());
    }
    const double pad = 0.05 * std::max(hi_x - lo_x, hi_y - lo_y);
    const double width = (hi_x - lo_x) + 2 * pad;
    const double height = (hi_y - lo_y) + 2 * pad;

    // y flipped so the math orientation matches screen orientation
    auto sx = [&](double x) { return x - (lo_x - pad); };
    auto sy = [&](double y) { return (hi_y + pad) - y; };

    std::string out;
    out += "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" viewBox=\"0 0 " +
           fmt(width) + " " + fmt(height) + "\">\n";

    if (!values) {
        out += "<path fill=\"none\" stroke=\"black\" stroke-width=\"" + fmt(0.005 * width) +
               "\" d=\"";
        for (std::size_t i = 0; i < v.size(); ++i) {
            out += (i == 0 ? "M " : "L ");
            out += fmt(sx(v[i].x())) + " " + fmt(sy(v[i].y())) + " ";
        }
        out += "Z\"/>\n";
    } else {
        double vmin = (*values)[0], vmax = (*values)[0];
        for (double val : *values) {
            vmin = std::min(vmin, val);
            vmax = std::max(vmax, val);
        }
        const double span = (vmax > vmin) ? (vmax - vmin) : 1.0;
        for (std::size_t i = 0; i < v.size(); ++i) {
            const Vec2& a = v[i];
            const Vec2& b = v[(i + 1) % v.size()];
            const double t = ((*values)[i] - vmin) / span;
            out += "<line x1=\"" + fmt(sx(a.x())) + "\" y1=\"" + fmt(sy(a.y())) + "\" x2=\"" +
                   fmt(sx(b.x())) + "\" y2=\"" + fmt(sy(b.y())) + "\" stroke=\"" + color_for(t) +
                   "\" stroke-width=\"" + fmt(0.008 * width) + "\"/>\n";
        }
        out += "<text x=\"" + fmt(0.02 * width) + "\" y=\"" + fmt(0.05 * height) +
               "\" font-size=\"" + fmt(0.04 * height) + "\">min " + format_double(vmin) +
               " (blue), max " + format_double(vmax) + " (red)</text>\n";
    }
    out += "</svg>\n";
    return out;
}

} // namespace convexity

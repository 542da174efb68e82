#include "convexity/io.hpp"

#include <cctype>
#include <charconv>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "convexity/errors.hpp"

namespace convexity {

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ValidationError("IoError", "cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw ValidationError("IoError", "cannot write " + path);
    out << content;
    if (!out) throw ValidationError("IoError", "write failed for " + path);
}

double parse_number(std::string_view tok, const char* what) {
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (ec != std::errc{} || ptr != tok.data() + tok.size())
        throw ValidationError("ParseError", std::string("bad ") + what + " '" + std::string(tok) + "'");
    return v;
}

int parse_index(std::string_view tok) {
    int v = 0;
    auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (ec != std::errc{} || ptr != tok.data() + tok.size())
        throw ValidationError("ParseError", "bad index '" + std::string(tok) + "'");
    return v;
}

} // namespace

std::string format_double(double v) {
    char buf[40];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::scientific, 16);
    return std::string(buf, ptr);
}

PolygonBoundary parse_polygon_json(const std::string& text) {
    nlohmann::json j = nlohmann::json::parse(text, nullptr, /*allow_exceptions=*/false);
    if (j.is_discarded()) throw ValidationError("ParseError", "invalid JSON");
    if (!j.is_object() || !j.contains("dim") || !j.contains("vertices"))
        throw ValidationError("ParseError", "polygon JSON needs 'dim' and 'vertices'");
    if (!j["dim"].is_number_integer() || j["dim"].get<int>() != 2)
        throw ValidationError("ParseError", "polygon JSON must have dim == 2");
    const auto& verts = j["vertices"];
    if (!verts.is_array()) throw ValidationError("ParseError", "'vertices' must be an array");
    std::vector<Vec2> v;
    v.reserve(verts.size());
    for (const auto& p : verts) {
        if (!p.is_array() || p.size() != 2 || !p[0].is_number() || !p[1].is_number())
            throw ValidationError("ParseError", "each vertex must be [x, y]");
        v.emplace_back(p[0].get<double>(), p[1].get<double>());
    }
    return PolygonBoundary::from_vertices(std::move(v));
}

PolygonBoundary read_polygon_json(const std::string& path) {
    return parse_polygon_json(read_file(path));
}

std::string polygon_to_json(const PolygonBoundary& shape) {
    std::string out = "{\"dim\": 2, \"vertices\": [";
    const auto& v = shape.vertices();
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) out += ", ";
        out += "[" + format_double(v[i].x()) + ", " + format_double(v[i].y()) + "]";
    }
    out += "]}\n";
    return out;
}

void write_polygon_json(const std::string& path, const PolygonBoundary& shape) {
    write_file(path, polygon_to_json(shape));
}

TriangleMeshBoundary parse_mesh_obj(const std::string& text) {
    std::vector<Vec3> verts;
    std::vector<std::array<int, 3>> tris;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        std::istringstream ls(line);
        std::string tag;
        if (!(ls >> tag) || tag[0] == '#') continue;
        auto fail = [&](const std::string& msg) -> ValidationError {
            return ValidationError("ParseError", "line " + std::to_string(lineno) + ": " + msg);
        };
        if (tag == "v") {
            std::string xs, ys, zs, extra;
            if (!(ls >> xs >> ys >> zs)) throw fail("vertex needs three coordinates");
            if (ls >> extra) throw fail("vertex with more than three coordinates");
            verts.emplace_back(parse_number(xs, "coordinate"), parse_number(ys, "coordinate"),
                               parse_number(zs, "coordinate"));
        } else if (tag == "f") {
            std::vector<int> idx;
            std::string tok;
            while (ls >> tok) {
                if (tok.find('/') != std::string::npos)
                    throw fail("only plain vertex indices are supported");
                int i = parse_index(tok);
                if (i < 1) throw fail("face indices are 1-based");
                idx.push_back(i - 1);
            }
            if (idx.size() != 3)
                throw fail("only triangles are supported, got a face with " +
                           std::to_string(idx.size()) + " vertices");
            tris.push_back({idx[0], idx[1], idx[2]});
        } else {
            throw fail("unsupported OBJ directive '" + tag + "'");
        }
    }
    return TriangleMeshBoundary::from_data(std::move(verts), std::move(tris));
}

TriangleMeshBoundary read_mesh_obj(const std::string& path) {
    return parse_mesh_obj(read_file(path));
}

std::string mesh_to_obj(const TriangleMeshBoundary& shape) {
    std::string out;
    out.reserve(shape.vertices().size() * 64 + shape.triangles().size() * 24);
    for (const auto& v : shape.vertices()) {
        out += "v " + format_double(v.x()) + " " + format_double(v.y()) + " " +
               format_double(v.z()) + "\n";
    }
    for (const auto& t : shape.triangles()) {
        out += "f " + std::to_string(t[0] + 1) + " " + std::to_string(t[1] + 1) + " " +
               std::to_string(t[2] + 1) + "\n";
    }
    return out;
}

void write_mesh_obj(const std::string& path, const TriangleMeshBoundary& shape) {
    write_file(path, mesh_to_obj(shape));
}

bool is_mesh_path(const std::string& path) {
    if (path.size() < 4) return false;
    std::string ext = path.substr(path.size() - 4);
    for (char& c : ext) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return ext == ".obj";
}

} // namespace convexity

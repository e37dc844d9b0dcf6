#include "maam/toolpath.hpp"

#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

namespace maam {

void Toolpath::validate() const {
    if (waypoints.size() < 2) throw InvariantError("toolpath needs at least 2 waypoints");
    for (size_t i = 0; i < waypoints.size(); ++i) {
        const Waypoint& w = waypoints[i];
        if (w.thickness <= 0 || w.width <= 0)
            throw InvariantError("waypoint thickness/width must be positive");
        if (i > 0 && (w.p - waypoints[i - 1].p).norm() <= 1e-6)
            throw InvariantError("consecutive waypoint positions coincide at index " +
                                 std::to_string(i));
    }
}

namespace {

bool starts_with(const std::string& s, const char* prefix) {
    return s.rfind(prefix, 0) == 0;
}

}  // namespace

std::vector<Toolpath> load_toolpaths(std::istream& in, const ToolpathDefaults& defaults) {
    std::vector<Toolpath> paths;
    Toolpath current;
    int layer = 0;
    int path_id = 0;
    int line_no = 0;

    auto flush = [&] {
        if (current.waypoints.empty()) return;
        if (current.waypoints.size() < 2)
            throw ParseError(line_no, "toolpath with fewer than 2 waypoints");
        current.layer_id = layer;
        current.path_id = path_id++;
        current.validate();
        paths.push_back(std::move(current));
        current = Toolpath{};
    };

    std::string line;
    while (std::getline(in, line)) {
        ++line_no;
        // strip trailing CR from CRLF input
        if (!line.empty() && line.back() == '\r') line.pop_back();
        size_t first = line.find_first_not_of(" \t");
        if (first == std::string::npos) continue;
        if (line[first] == ';') {
            std::string cmd = line.substr(first);
            if (starts_with(cmd, ";path")) {
                flush();
            } else if (starts_with(cmd, ";layer")) {
                flush();
                std::istringstream ls(cmd.substr(6));
                int id;
                if (!(ls >> id)) throw ParseError(line_no, "bad layer id");
                layer = id;
            }
            continue;
        }
        std::istringstream ls(line);
        Vec3 p, n;
        if (!(ls >> p.x >> p.y >> p.z >> n.x >> n.y >> n.z))
            throw ParseError(line_no, "expected `px py pz nx ny nz [thickness width]`");
        double t = defaults.thickness, w = defaults.width;
        if (ls >> t) {
            if (!(ls >> w)) throw ParseError(line_no, "thickness given without width");
        }
        Waypoint wp;
        wp.p = p;
        try {
            wp.n = Orientation::from_vector(n);
        } catch (const InvariantError& e) {
            throw ParseError(line_no, e.what());
        }
        if (t <= 0 || w <= 0) throw ParseError(line_no, "thickness/width must be positive");
        wp.thickness = t;
        wp.width = w;
        if (!current.waypoints.empty() &&
            (wp.p - current.waypoints.back().p).norm() <= 1e-6)
            throw ParseError(line_no, "duplicate consecutive position");
        current.waypoints.push_back(wp);
    }
    flush();
    return paths;
}

void save_toolpaths(std::ostream& out, const std::vector<Toolpath>& paths) {
    int layer = 0;
    bool first = true;
    char buf[256];
    for (const Toolpath& tp : paths) {
        if (first || tp.layer_id != layer) {
            out << ";layer " << tp.layer_id << "\n";
            layer = tp.layer_id;
        } else {
            out << ";path\n";
        }
        first = false;
        for (const Waypoint& w : tp.waypoints) {
            std::snprintf(buf, sizeof(buf), "%.9g %.9g %.9g %.17g %.17g %.17g %.9g %.9g\n",
                          w.p.x, w.p.y, w.p.z, w.n.n.x, w.n.n.y, w.n.n.z, w.thickness, w.width);
            out << buf;
        }
    }
}

Toolpath smooth_orientations(const Toolpath& tp, double lambda, int iterations) {
    if (!(lambda > 0 && lambda <= 1)) throw InvariantError("lambda must be in (0, 1]");
    Toolpath out = tp;
    const size_t n = out.waypoints.size();
    if (n < 3 || iterations <= 0) return out;
    std::vector<Vec3> cur(n);
    for (size_t i = 0; i < n; ++i) cur[i] = out.waypoints[i].n.n;
    std::vector<Vec3> next = cur;
    for (int it = 0; it < iterations; ++it) {
        for (size_t i = 1; i + 1 < n; ++i) {
            Vec3 mid = (cur[i - 1] + cur[i + 1]) * 0.5;
            next[i] = (cur[i] + (mid - cur[i]) * lambda).normalized();
        }
        std::swap(cur, next);
    }
    for (size_t i = 1; i + 1 < n; ++i) out.waypoints[i].n = Orientation::from_vector(cur[i]);
    return out;
}

}  // namespace maam

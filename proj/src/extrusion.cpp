#include "maam/extrusion.hpp"

#include <cmath>

namespace maam {

void ExtrusionParams::validate() const {
    if (!(k > 0)) throw InvariantError("extrusion coefficient k must be positive");
    if (!(0 < f_min && f_min < f_max))
        throw InvariantError("feedrate limits require 0 < f_min < f_max");
    if (!(sample_time > 0)) throw InvariantError("sample_time must be positive");
    if (!(filament_diameter > 0)) throw InvariantError("filament diameter must be positive");
}

double extrusion_volume(const Waypoint& a, const Waypoint& b, const ExtrusionParams& params) {
    const double dist = (b.p - a.p).norm();
    if (dist <= 0) throw DegenerateSegment("coincident waypoint positions");
    return 0.25 * params.k * (a.thickness + b.thickness) * (a.width + b.width) * dist;
}

SpeedWindow speed_window(const Waypoint& a, const Waypoint& b, const ExtrusionParams& params) {
    const double dist = (b.p - a.p).norm();
    const double de = extrusion_volume(a, b, params);
    SpeedWindow win;
    win.delta_e = de;
    win.v_min = params.f_min * dist / de;
    win.v_max = params.f_max * dist / de;
    win.t_min = de / params.f_max;
    win.t_max = de / params.f_min;
    return win;
}

TipSpeed achievable_tip_speed(const IkSolution& a, const Vec3& xyz_a, const IkSolution& b,
                              const Vec3& xyz_b, double wcs_dist, const MachineConfig& cfg,
                              const SpeedWindow& win) {
    const AxisSpeeds& s = cfg.max_axis_speed;
    double t_axes = std::abs(xyz_b.x - xyz_a.x) / s.x;
    t_axes = std::max(t_axes, std::abs(xyz_b.y - xyz_a.y) / s.y);
    t_axes = std::max(t_axes, std::abs(xyz_b.z - xyz_a.z) / s.z);
    t_axes = std::max(t_axes, std::abs(b.rot1_deg - a.rot1_deg) / s.rot1);
    if (!a.c_free && !b.c_free)
        t_axes = std::max(t_axes, std::abs(b.c_deg - a.c_deg) / s.c);
    const double t = std::max(t_axes, wcs_dist / cfg.max_tip_speed);
    TipSpeed out;
    out.v = t > 0 ? wcs_dist / t : cfg.max_tip_speed;
    // The commanded feed can always be lowered into the window, so only a
    // ceiling below v_min is a real violation.
    out.feasible = out.v >= win.v_min;
    return out;
}

Toolpath densify(const Toolpath& tp, const ExtrusionParams& params, const MachineConfig& cfg) {
    (void)cfg;
    Toolpath out;
    out.layer_id = tp.layer_id;
    out.path_id = tp.path_id;
    if (tp.waypoints.empty()) return out;
    out.waypoints.push_back(tp.waypoints.front());
    for (size_t i = 0; i + 1 < tp.waypoints.size(); ++i) {
        const Waypoint& a = tp.waypoints[i];
        const Waypoint& b = tp.waypoints[i + 1];
        const SpeedWindow win = speed_window(a, b, params);
        const double dist = (b.p - a.p).norm();
        // Per-sample speed at the nominal waypoint rate.
        const double v_sample = dist / params.sample_time;
        int pieces = 1;
        if (v_sample > win.v_max) pieces = static_cast<int>(std::ceil(v_sample / win.v_max));
        if (pieces > 64)
            throw SubdivisionLimit("segment " + std::to_string(i) + " needs " +
                                   std::to_string(pieces) + " splits");
        for (int j = 1; j < pieces; ++j) {
            const double t = static_cast<double>(j) / pieces;
            Waypoint mid;
            mid.p = a.p * (1 - t) + b.p * t;
            mid.n = Orientation{slerp(a.n.n, b.n.n, t)};
            mid.thickness = a.thickness * (1 - t) + b.thickness * t;
            mid.width = a.width * (1 - t) + b.width * t;
            mid.status = a.status;
            out.waypoints.push_back(mid);
        }
        out.waypoints.push_back(b);
    }
    return out;
}

}  // namespace maam

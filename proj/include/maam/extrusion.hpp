#pragma once

#include "maam/toolpath.hpp"

namespace maam {

struct ExtrusionParams {
    double k = 1.0;       // machine calibration coefficient
    double f_min = 0.08;  // mm^3/s
    double f_max = 2.0;   // mm^3/s
    // Nominal traversal time per waypoint segment; segments that would demand
    // a tip speed above v_max at this sampling rate get subdivided.
    double sample_time = 0.1;  // s
    double filament_diameter = 1.75;  // mm, for length-unit E output

    void validate() const;
};

struct SpeedWindow {
    double v_min = 0;    // mm/s
    double v_max = 0;    // mm/s
    double t_min = 0;    // s
    double t_max = 0;    // s
    double delta_e = 0;  // mm^3
};

// Material volume deposited between two waypoints:
// dE = (k/4) (T_a + T_b)(W_a + W_b) |p_b - p_a|.
double extrusion_volume(const Waypoint& a, const Waypoint& b, const ExtrusionParams& params);

// Tip-speed window implied by the extruder feedrate limits.
SpeedWindow speed_window(const Waypoint& a, const Waypoint& b, const ExtrusionParams& params);

struct TipSpeed {
    double v = 0;
    bool feasible = false;
};

// Fastest tip speed the axes allow over a segment, capped by the machine's
// linear tip-speed limit. C values must already be unwrapped. Infeasible
// when even the fastest execution stays below v_min.
TipSpeed achievable_tip_speed(const IkSolution& a, const Vec3& xyz_a, const IkSolution& b,
                              const Vec3& xyz_b, double wcs_dist, const MachineConfig& cfg,
                              const SpeedWindow& win);

// Subdivide segments whose per-sample tip speed would exceed v_max; positions
// interpolate linearly, orientations spherically. Never removes points.
Toolpath densify(const Toolpath& tp, const ExtrusionParams& params, const MachineConfig& cfg);

}  // namespace maam

#pragma once

#include <string>
#include <vector>

#include "maam/planner.hpp"

namespace maam {

struct EmitOptions {
    bool volumetric_e = false;       // emit E as mm^3 instead of filament mm
    double filament_diameter = 1.75; // mm
    double travel_lift = 5.0;        // mm of Z lift on a break
    double travel_feed = 100.0;      // mm/s for G0 moves
};

// One trajectory per toolpath, in print order.
std::string emit_gcode(const std::vector<Trajectory>& trajs, const MachineConfig& cfg,
                       const EmitOptions& opts = {});

struct SpeedHistogram {
    double bucket_width = 0.5;       // mm/s
    std::vector<int> counts;         // bucket i covers [i*w, (i+1)*w)
    int total = 0;
    int violations = 0;              // segments with v outside [v_min, v_max]
    double violation_fraction = 0;   // percent
};

struct MotionSample {
    int waypoint_index = 0;
    double b = 0;       // deg
    double c = 0;       // deg, unwrapped
    double v = 0;       // mm/s (segment speed to the next waypoint; last repeats)
    bool feasible = true;
};

struct SpeedReport {
    SpeedHistogram before;
    SpeedHistogram after;
    std::vector<MotionSample> before_samples;
    std::vector<MotionSample> after_samples;
};

// Per-toolpath raw-IK baseline motion (primary branch, wound C) used as the
// "before" side of the report.
std::vector<MotionSample> baseline_motion(const Toolpath& tp, const MachineConfig& cfg,
                                          const ExtrusionParams& params);

std::vector<MotionSample> trajectory_motion(const Trajectory& traj, const MachineConfig& cfg,
                                            const ExtrusionParams& params);

SpeedReport emit_report(const std::vector<std::vector<MotionSample>>& before,
                        const std::vector<std::vector<MotionSample>>& after);

std::string report_text(const SpeedReport& rep);
std::string report_csv(const SpeedReport& rep);

}  // namespace maam

#pragma once

#include <iosfwd>
#include <vector>

#include "maam/kinematics.hpp"

namespace maam {

enum class WaypointStatus { Unchanged, SingularProcessed, VariantSet };

struct Waypoint {
    Vec3 p;
    Orientation n;
    double thickness = 0.2;  // mm
    double width = 0.4;      // mm
    WaypointStatus status = WaypointStatus::Unchanged;
};

struct Toolpath {
    std::vector<Waypoint> waypoints;
    int layer_id = 0;
    int path_id = 0;

    void validate() const;
};

struct ToolpathDefaults {
    double thickness = 0.2;
    double width = 0.4;
};

// Waypoint file: one `px py pz nx ny nz [thickness width]` per line, mm.
// `;` starts a comment, `;path` starts a new toolpath, `;layer N` sets the
// layer id for subsequent paths.
std::vector<Toolpath> load_toolpaths(std::istream& in, const ToolpathDefaults& defaults = {});

// Canonical form of the same format (load(save(x)) == x).
void save_toolpaths(std::ostream& out, const std::vector<Toolpath>& paths);

// Umbrella-operator Laplacian smoothing of interior orientations; endpoints
// and all positions are untouched.
Toolpath smooth_orientations(const Toolpath& tp, double lambda, int iterations);

}  // namespace maam

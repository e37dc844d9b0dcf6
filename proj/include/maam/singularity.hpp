#pragma once

#include <optional>
#include <vector>

#include "maam/toolpath.hpp"

namespace maam {

enum class SegmentCase { Interior, PathStartsIn, PathEndsIn };

// A maximal run [first, last] of waypoints inside the singular cone, with
// the bounding non-singular anchors when they exist.
struct SingularSegment {
    int first = 0;
    int last = 0;
    std::optional<int> anchor_start;
    std::optional<int> anchor_end;
    SegmentCase kind = SegmentCase::Interior;
};

// (polar angle from the pole, azimuth) view of an orientation; the singular
// region is the band b in [-alpha, alpha].
struct CylCoord {
    double b = 0;  // deg, >= 0
    double c = 0;  // deg, unwrapped
};

// Eq-style cone test: sqrt((nx/nz)^2 + (ny/nz)^2) <= tan(alpha), boundary
// inclusive.
bool is_singular(const Orientation& n, double alpha_deg);

std::vector<SingularSegment> find_segments(const Toolpath& tp, double alpha_deg);

struct ProcessedSegment {
    // One orientation per waypoint index in [first, last].
    std::vector<Orientation> orientations;
    // Set when the dual solution was taken for the end anchor; constrains
    // that waypoint's graph column to the matching branch.
    std::optional<Branch> anchor_end_branch;
};

// Reproject the orientations of a singular segment: end cases freeze to the
// anchor orientation; interior segments follow the minor boundary arc, or an
// interpolated crossing through the region when the dual end solution gives
// a smaller C-axis swing.
ProcessedSegment process_segment(const SingularSegment& seg, const Toolpath& tp, double alpha_deg,
                                 const MachineConfig& cfg);

// Indices i where the wound per-step |C_{i+1} - C_i| still exceeds the limit.
std::vector<int> break_extreme(const std::vector<double>& c_unwrapped, double delta_c_max);

// Convenience overload on a toolpath using the primary-branch IK.
std::vector<int> break_extreme(const Toolpath& tp, double delta_c_max, const MachineConfig& cfg);

}  // namespace maam

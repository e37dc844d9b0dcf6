#include "maam/singularity.hpp"

#include <cmath>

#include "maam/errors.hpp"

namespace maam {

bool is_singular(const Orientation& o, double alpha_deg) {
    if (o.n.z <= 1e-12) throw HorizontalOrientation("n_z must be positive for the cone test");
    const double rho = std::sqrt((o.n.x / o.n.z) * (o.n.x / o.n.z) +
                                 (o.n.y / o.n.z) * (o.n.y / o.n.z));
    // boundary inclusive; the relative slack absorbs trig rounding
    return rho <= std::tan(deg2rad(alpha_deg)) * (1.0 + 1e-12);
}

std::vector<SingularSegment> find_segments(const Toolpath& tp, double alpha_deg) {
    std::vector<SingularSegment> segments;
    const int n = static_cast<int>(tp.waypoints.size());
    int i = 0;
    while (i < n) {
        if (!is_singular(tp.waypoints[i].n, alpha_deg)) {
            ++i;
            continue;
        }
        int j = i;
        while (j + 1 < n && is_singular(tp.waypoints[j + 1].n, alpha_deg)) ++j;
        SingularSegment seg;
        seg.first = i;
        seg.last = j;
        if (i > 0) seg.anchor_start = i - 1;
        if (j + 1 < n) seg.anchor_end = j + 1;
        if (!seg.anchor_start)
            seg.kind = SegmentCase::PathStartsIn;
        else if (!seg.anchor_end)
            seg.kind = SegmentCase::PathEndsIn;
        else
            seg.kind = SegmentCase::Interior;
        segments.push_back(seg);
        i = j + 1;
    }
    return segments;
}

ProcessedSegment process_segment(const SingularSegment& seg, const Toolpath& tp,
                                 double alpha_deg, const MachineConfig& cfg) {
    ProcessedSegment out;
    const int count = seg.last - seg.first + 1;
    out.orientations.reserve(count);

    if (seg.kind != SegmentCase::Interior) {
        // Freeze B and C: copy the single anchor's orientation. A toolpath
        // entirely inside the region keeps its first orientation.
        Orientation anchor_n;
        if (seg.anchor_end)
            anchor_n = tp.waypoints[*seg.anchor_end].n;
        else if (seg.anchor_start)
            anchor_n = tp.waypoints[*seg.anchor_start].n;
        else
            anchor_n = tp.waypoints[seg.first].n;
        out.orientations.assign(count, anchor_n);
        return out;
    }

    const IkSolution sol_s = ik_rotational(tp.waypoints[*seg.anchor_start].n, cfg).plus;
    const IkSolution sol_e = ik_rotational(tp.waypoints[*seg.anchor_end].n, cfg).plus;
    const double theta = std::abs(wound_c_distance(sol_s.c_deg, sol_e.c_deg).delta);

    double b_from = sol_s.rot1_deg, b_to = sol_e.rot1_deg;
    double c_from = sol_s.c_deg;
    double c_delta;
    bool on_boundary;
    if (theta <= 90.0) {
        // Minor arc on the cone boundary, uniform C spacing.
        on_boundary = true;
        c_delta = wound_c_distance(sol_s.c_deg, sol_e.c_deg).delta;
    } else {
        // Dual solution of the end anchor gives the smaller C swing; cross
        // the region on a straight (b, c) interpolation.
        on_boundary = false;
        const IkSolution dual = dual_of(sol_e);
        b_to = dual.rot1_deg;
        c_delta = wound_c_distance(sol_s.c_deg, dual.c_deg).delta;
        out.anchor_end_branch = Branch::Minus;
    }

    for (int i = 0; i < count; ++i) {
        const double t = static_cast<double>(i + 1) / (count + 1);
        const double c = c_from + c_delta * t;
        double b = on_boundary ? alpha_deg : b_from + (b_to - b_from) * t;
        // keep the crossing off the exact pole: a free-C node would hide the
        // winding cost of this step from the graph search
        constexpr double kMinTilt = 0.01;
        if (std::abs(b) < kMinTilt) b = b >= 0 ? kMinTilt : -kMinTilt;
        out.orientations.push_back(fk_orientation(b, c, cfg.rotary));
    }
    return out;
}

std::vector<int> break_extreme(const std::vector<double>& c_unwrapped, double delta_c_max) {
    std::vector<int> breaks;
    for (size_t i = 0; i + 1 < c_unwrapped.size(); ++i)
        if (std::abs(c_unwrapped[i + 1] - c_unwrapped[i]) > delta_c_max)
            breaks.push_back(static_cast<int>(i));
    return breaks;
}

std::vector<int> break_extreme(const Toolpath& tp, double delta_c_max, const MachineConfig& cfg) {
    std::vector<double> c;
    c.reserve(tp.waypoints.size());
    double prev = 0;
    bool have_prev = false;
    for (const Waypoint& w : tp.waypoints) {
        const IkSolution sol = ik_rotational(w.n, cfg).plus;
        if (sol.c_free) {
            c.push_back(have_prev ? prev : 0.0);
        } else if (!have_prev) {
            c.push_back(sol.c_deg);
        } else {
            c.push_back(wound_c_distance(prev, sol.c_deg).c_to_unwrapped);
        }
        prev = c.back();
        have_prev = true;
    }
    return break_extreme(c, delta_c_max);
}

}  // namespace maam

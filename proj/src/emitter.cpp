#include "maam/emitter.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

namespace maam {

namespace {

const char* kind_name(ConfigKind k) {
    switch (k) {
        case ConfigKind::ConfigI: return "I";
        case ConfigKind::ConfigII: return "II";
        default: return "III";
    }
}

std::string fixed4(double v) {
    char buf[48];
    std::snprintf(buf, sizeof(buf), "%.4f", v);
    // normalize -0.0000
    std::string s(buf);
    if (s == "-0.0000") s = "0.0000";
    return s;
}

struct AxisState {
    bool has = false;
    std::string val;
};

class LineWriter {
public:
    LineWriter(std::string& out, char rot1_letter) : out_(out), rot1_(rot1_letter) {}

    void move(const char* cmd, const TrajectoryNode& n, double e_cum, bool with_e, double feed) {
        std::string line(cmd);
        emit_axis(line, 'X', x_, n.xyz.x);
        emit_axis(line, 'Y', y_, n.xyz.y);
        emit_axis(line, 'Z', z_, n.xyz.z);
        emit_axis(line, rot1_, r1_, n.sol.rot1_deg);
        emit_axis(line, 'C', c_, n.sol.c_deg);
        if (with_e) line += " E" + fixed4(e_cum);
        const std::string f = fixed4(feed * 60.0);
        if (!f_.has || f_.val != f) {
            line += " F" + f;
            f_ = {true, f};
        }
        out_ += line;
        out_ += '\n';
    }

    void raw_z(const char* cmd, double z, double feed) {
        std::string line(cmd);
        emit_axis(line, 'Z', z_, z, true);
        const std::string f = fixed4(feed * 60.0);
        if (!f_.has || f_.val != f) {
            line += " F" + f;
            f_ = {true, f};
        }
        out_ += line;
        out_ += '\n';
    }

private:
    void emit_axis(std::string& line, char letter, AxisState& st, double v, bool force = false) {
        const std::string s = fixed4(v);
        if (!force && st.has && st.val == s) return;
        line += ' ';
        line += letter;
        line += s;
        st = {true, s};
    }

    std::string& out_;
    char rot1_;
    AxisState x_, y_, z_, r1_, c_, f_;
};

}  // namespace

std::string emit_gcode(const std::vector<Trajectory>& trajs, const MachineConfig& cfg,
                       const EmitOptions& opts) {
    std::string out;
    out += "; multi-axis motion-planned toolpath\n";
    out += "; units: mm, deg; feed: mm/min\n";
    out += std::string("; machine: config ") + kind_name(cfg.kind) + " " +
           (cfg.rotary == RotaryLayout::BC ? "BC" : "AC") + "\n";
    out += std::string("; extrusion units: ") +
           (opts.volumetric_e ? "mm^3" : "filament mm") + "\n";
    const char rot1_letter = cfg.rotary == RotaryLayout::BC ? 'B' : 'A';
    const double filament_area = 0.25 * kPi * opts.filament_diameter * opts.filament_diameter;
    const double e_scale = opts.volumetric_e ? 1.0 : 1.0 / filament_area;

    LineWriter lw(out, rot1_letter);
    double e_cum = 0;
    for (const Trajectory& traj : trajs) {
        if (traj.nodes.empty()) continue;
        // approach the first node as a travel move
        lw.raw_z("G0", traj.nodes.front().xyz.z + opts.travel_lift, opts.travel_feed);
        lw.move("G0", traj.nodes.front(), 0, false, opts.travel_feed);
        for (size_t i = 0; i + 1 < traj.nodes.size(); ++i) {
            const TrajectorySegment& seg = traj.segments[i];
            const TrajectoryNode& b = traj.nodes[i + 1];
            if (seg.is_break) {
                lw.raw_z("G0", traj.nodes[i].xyz.z + opts.travel_lift, opts.travel_feed);
                lw.move("G0", b, 0, false, opts.travel_feed);
                lw.raw_z("G0", b.xyz.z, opts.travel_feed);
                continue;
            }
            e_cum += seg.delta_e * e_scale;
            lw.move("G1", b, e_cum, true, seg.feed);
        }
    }
    return out;
}

std::vector<MotionSample> baseline_motion(const Toolpath& tp, const MachineConfig& cfg,
                                          const ExtrusionParams& params) {
    std::vector<MotionSample> out;
    out.reserve(tp.waypoints.size());
    double c_prev = 0;
    bool have_c = false;
    std::vector<IkSolution> sols;
    std::vector<Vec3> xyzs;
    for (const Waypoint& w : tp.waypoints) {
        IkSolution sol = ik_rotational(w.n, cfg).plus;
        if (sol.c_free) {
            // once a concrete C is substituted the move to the next waypoint
            // is a real C rotation and must be timed like any other
            sol.c_deg = have_c ? c_prev : 0.0;
            sol.c_free = false;
        } else if (have_c)
            sol.c_deg = wound_c_distance(c_prev, sol.c_deg).c_to_unwrapped;
        c_prev = sol.c_deg;
        have_c = true;
        sols.push_back(sol);
        xyzs.push_back(ik_linear(w.p, sol, cfg));
    }
    for (size_t i = 0; i < tp.waypoints.size(); ++i) {
        MotionSample s;
        s.waypoint_index = static_cast<int>(i);
        s.b = sols[i].rot1_deg;
        s.c = sols[i].c_deg;
        if (i + 1 < tp.waypoints.size()) {
            const SpeedWindow win = speed_window(tp.waypoints[i], tp.waypoints[i + 1], params);
            const double dist = (tp.waypoints[i + 1].p - tp.waypoints[i].p).norm();
            const TipSpeed ts =
                achievable_tip_speed(sols[i], xyzs[i], sols[i + 1], xyzs[i + 1], dist, cfg, win);
            s.v = ts.v;
            s.feasible = ts.feasible;
        } else if (!out.empty()) {
            s.v = out.back().v;
            s.feasible = out.back().feasible;
        }
        out.push_back(s);
    }
    return out;
}

std::vector<MotionSample> trajectory_motion(const Trajectory& traj, const MachineConfig& cfg,
                                            const ExtrusionParams& params) {
    (void)cfg;
    (void)params;
    std::vector<MotionSample> out;
    out.reserve(traj.nodes.size());
    for (size_t i = 0; i < traj.nodes.size(); ++i) {
        MotionSample s;
        s.waypoint_index = traj.nodes[i].waypoint_index;
        s.b = traj.nodes[i].sol.rot1_deg;
        s.c = traj.nodes[i].sol.c_deg;
        if (i < traj.segments.size()) {
            const TrajectorySegment& seg = traj.segments[i];
            s.v = seg.v_achievable;
            s.feasible = seg.is_break || s.v >= seg.window.v_min;
        } else if (!out.empty()) {
            s.v = out.back().v;
            s.feasible = out.back().feasible;
        }
        out.push_back(s);
    }
    return out;
}

namespace {

SpeedHistogram histogram(const std::vector<std::vector<MotionSample>>& motions) {
    SpeedHistogram h;
    for (const auto& path : motions) {
        const size_t segs = path.size() > 0 ? path.size() - 1 : 0;
        for (size_t i = 0; i < segs; ++i) {
            const MotionSample& s = path[i];
            const int bucket = static_cast<int>(std::floor(s.v / h.bucket_width));
            if (bucket >= static_cast<int>(h.counts.size())) h.counts.resize(bucket + 1, 0);
            ++h.counts[std::max(bucket, 0)];
            ++h.total;
            if (!s.feasible) ++h.violations;
        }
    }
    h.violation_fraction = h.total > 0 ? 100.0 * h.violations / h.total : 0.0;
    return h;
}

}  // namespace

SpeedReport emit_report(const std::vector<std::vector<MotionSample>>& before,
                        const std::vector<std::vector<MotionSample>>& after) {
    SpeedReport rep;
    rep.before = histogram(before);
    rep.after = histogram(after);
    for (const auto& path : before)
        rep.before_samples.insert(rep.before_samples.end(), path.begin(), path.end());
    for (const auto& path : after)
        rep.after_samples.insert(rep.after_samples.end(), path.begin(), path.end());
    return rep;
}

std::string report_text(const SpeedReport& rep) {
    std::ostringstream os;
    char buf[128];
    std::snprintf(buf, sizeof(buf), "segments_before: %d\n", rep.before.total);
    os << buf;
    std::snprintf(buf, sizeof(buf), "segments_after: %d\n", rep.after.total);
    os << buf;
    std::snprintf(buf, sizeof(buf), "violation_fraction_before: %.4f\n",
                  rep.before.violation_fraction);
    os << buf;
    std::snprintf(buf, sizeof(buf), "violation_fraction_after: %.4f\n",
                  rep.after.violation_fraction);
    os << buf;
    os << "bucket_width: " << rep.before.bucket_width << "\n";
    auto dump = [&](const char* name, const SpeedHistogram& h) {
        os << name << ":";
        for (int c : h.counts) os << " " << c;
        os << "\n";
    };
    dump("histogram_before", rep.before);
    dump("histogram_after", rep.after);
    return os.str();
}

std::string report_csv(const SpeedReport& rep) {
    std::ostringstream os;
    os << "phase,index,B,C,v,feasible\n";
    char buf[160];
    auto dump = [&](const char* phase, const std::vector<MotionSample>& samples) {
        for (const MotionSample& s : samples) {
            std::snprintf(buf, sizeof(buf), "%s,%d,%.6f,%.6f,%.6f,%d\n", phase,
                          s.waypoint_index, s.b, s.c, s.v, s.feasible ? 1 : 0);
            os << buf;
        }
    };
    dump("before", rep.before_samples);
    dump("after", rep.after_samples);
    return os.str();
}

}  // namespace maam

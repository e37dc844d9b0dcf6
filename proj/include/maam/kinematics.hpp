#pragma once

#include "maam/errors.hpp"
#include "maam/geometry.hpp"

namespace maam {

// The three parallel-axis machine layouts: rotational table + tilting head,
// rotational + tilting extrusion head, rotational + tilting platform.
enum class ConfigKind { ConfigI, ConfigII, ConfigIII };

// Which axis carries the tilt: B (about Y) or A (about X).
enum class RotaryLayout { BC, AC };

enum class Branch { Plus, Minus };

struct AxisSpeeds {
    double x = 100.0;   // mm/s
    double y = 100.0;   // mm/s
    double z = 100.0;   // mm/s
    double rot1 = 90.0; // deg/s (A or B)
    double c = 90.0;    // deg/s
};

struct MachineConfig {
    ConfigKind kind = ConfigKind::ConfigIII;
    RotaryLayout rotary = RotaryLayout::BC;
    double d = 0.0;  // mm, nozzle tip to B-axis (Config I)
    double h = 0.0;  // mm, nozzle tip to B/C intersection (Config II)
    double r = 0.0;  // mm, nozzle tip to C-axis (Config II)
    AxisSpeeds max_axis_speed;
    double max_tip_speed = 200.0;  // mm/s, linear cap at the nozzle tip
    double alpha_deg = 4.5;        // singular cone half-angle

    void validate() const;
};

// Unit nozzle direction in WCS; never points below horizontal.
struct Orientation {
    Vec3 n{0, 0, 1};

    static Orientation from_vector(const Vec3& v);
    double polar_deg() const { return rad2deg(std::acos(std::clamp(n.z, -1.0, 1.0))); }
};

struct IkSolution {
    double rot1_deg = 0.0;  // A or B, in [-180, 180]
    double c_deg = 0.0;     // unbounded once unwrapped
    Branch branch = Branch::Plus;
    bool c_free = false;    // pole: C indeterminate
};

struct IkPair {
    IkSolution plus;
    IkSolution minus;
};

// Rotary part of the IK: both branches (+acos(nz), C+) and (-acos(nz), C-).
// At the pole the C value is flagged free instead of failing.
IkPair ik_rotational(const Orientation& n, const MachineConfig& cfg);

// Orientation realized by a rotary configuration (inverse of ik_rotational).
Orientation fk_orientation(double rot1_deg, double c_deg, RotaryLayout rotary);

// The affine map p -> machine XYZ for fixed rotary angles.
struct LinearMap {
    Mat3 rot;
    Vec3 offset;
};
LinearMap linear_map(double rot1_deg, double c_deg, const MachineConfig& cfg);

// Machine XYZ for a WCS position under a rotary solution.
Vec3 ik_linear(const Vec3& p, const IkSolution& sol, const MachineConfig& cfg);

struct FkResult {
    Vec3 p;
    Orientation n;
};

// Exact inverse of ik_linear + ik_rotational on the given branch.
FkResult fk(const IkSolution& sol, const Vec3& xyz, const MachineConfig& cfg);

struct WoundStep {
    double delta;            // signed, |delta| <= 180
    double c_to_unwrapped;   // c_from + delta, congruent to c_to mod 360
};

// Shortest C-axis move from an unbounded angle to a target mod 360.
WoundStep wound_c_distance(double c_from, double c_to);

// The other rotary solution realizing the same orientation: (-rot1, c+180).
IkSolution dual_of(const IkSolution& sol);

}  // namespace maam

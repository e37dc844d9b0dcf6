#include "maam/kinematics.hpp"

#include <cmath>

namespace maam {

void MachineConfig::validate() const {
    if (d < 0 || h < 0 || r < 0)
        throw InvariantError("machine offsets d/h/r must be non-negative");
    if (!(alpha_deg > 0 && alpha_deg < 90))
        throw InvariantError("alpha must lie in (0, 90) degrees");
    if (max_axis_speed.x <= 0 || max_axis_speed.y <= 0 || max_axis_speed.z <= 0 ||
        max_axis_speed.rot1 <= 0 || max_axis_speed.c <= 0 || max_tip_speed <= 0)
        throw InvariantError("axis speed limits must be positive");
}

Orientation Orientation::from_vector(const Vec3& v) {
    const double len = v.norm();
    if (len < 1e-12) throw InvariantError("zero-length orientation vector");
    // keep already-unit vectors bit-stable (round-trip through text files)
    Vec3 u = std::abs(len - 1.0) <= 1e-12 ? v : v / len;
    if (u.z < 0) throw InvariantError("orientation points below horizontal (n_z < 0)");
    return Orientation{u};
}

IkPair ik_rotational(const Orientation& o, const MachineConfig& cfg) {
    const Vec3& n = o.n;
    const double b = rad2deg(std::acos(std::clamp(n.z, -1.0, 1.0)));
    const double s2 = n.x * n.x + n.y * n.y;
    if (s2 < 1e-24) {
        // Pole: any C realizes the orientation; consumer substitutes a neighbor's C.
        IkSolution plus{0.0, 0.0, Branch::Plus, true};
        IkSolution minus{0.0, 0.0, Branch::Minus, true};
        return {plus, minus};
    }
    double c_plus;
    if (cfg.rotary == RotaryLayout::BC)
        c_plus = rad2deg(std::atan2(-n.y, n.x));
    else
        c_plus = rad2deg(std::atan2(-n.x, n.y));
    IkSolution plus{b, c_plus, Branch::Plus, false};
    IkSolution minus{-b, wrap_deg(c_plus + 180.0), Branch::Minus, false};
    return {plus, minus};
}

Orientation fk_orientation(double rot1_deg, double c_deg, RotaryLayout rotary) {
    const double b = deg2rad(rot1_deg);
    const double c = deg2rad(c_deg);
    const double sb = std::sin(b), cb = std::cos(b);
    const double sc = std::sin(c), cc = std::cos(c);
    Vec3 n;
    if (rotary == RotaryLayout::BC)
        n = {sb * cc, -sb * sc, cb};
    else
        n = {-sb * sc, sb * cc, cb};
    return Orientation{n.normalized()};
}

LinearMap linear_map(double rot1_deg, double c_deg, const MachineConfig& cfg) {
    const double b = deg2rad(rot1_deg);
    const double c = deg2rad(c_deg);
    const double sb = std::sin(b), cb = std::cos(b);
    const double sc = std::sin(c), cc = std::cos(c);
    LinearMap map;
    Mat3& R = map.rot;
    Vec3& t = map.offset;
    if (cfg.rotary == RotaryLayout::BC) {
        switch (cfg.kind) {
            case ConfigKind::ConfigI:
                R.m = {cc, -sc, 0, -sc, -cc, 0, 0, 0, 1};
                t = {cfg.d * sb, 0, -cfg.d * (1 - cb)};
                break;
            case ConfigKind::ConfigII:
                R = Mat3::identity();
                t = {cfg.r * sc + cfg.h * cc * sb,
                     -cfg.r * cc + cfg.h * sc * sb + cfg.r,
                     cfg.h * cb - cfg.h};
                break;
            case ConfigKind::ConfigIII:
                R.m = {cb * cc, -cb * sc, sb, sc, cc, 0, -sb * cc, sb * sc, cb};
                t = {0, 0, 0};
                break;
        }
    } else {
        switch (cfg.kind) {
            case ConfigKind::ConfigI:
                R.m = {-cc, sc, 0, sc, cc, 0, 0, 0, 1};
                t = {0, -cfg.d * sb, -cfg.d * (1 - cb)};
                break;
            case ConfigKind::ConfigII:
                R = Mat3::identity();
                t = {-cfg.r * cc + cfg.h * sc * sb + cfg.r,
                     -cfg.r * sc - cfg.h * cc * sb,
                     cfg.h * cb - cfg.h};
                break;
            case ConfigKind::ConfigIII:
                R.m = {cc, -sc, 0, cb * sc, cb * cc, -sb, sb * sc, sb * cc, cb};
                t = {0, 0, 0};
                break;
        }
    }
    return map;
}

Vec3 ik_linear(const Vec3& p, const IkSolution& sol, const MachineConfig& cfg) {
    const LinearMap map = linear_map(sol.rot1_deg, sol.c_deg, cfg);
    return map.rot * p + map.offset;
}

FkResult fk(const IkSolution& sol, const Vec3& xyz, const MachineConfig& cfg) {
    const LinearMap map = linear_map(sol.rot1_deg, sol.c_deg, cfg);
    FkResult out;
    out.p = map.rot.inverse() * (xyz - map.offset);
    out.n = fk_orientation(sol.rot1_deg, sol.c_deg, cfg.rotary);
    return out;
}

WoundStep wound_c_distance(double c_from, double c_to) {
    const double delta = wrap_deg(c_to - c_from);
    return {delta, c_from + delta};
}

IkSolution dual_of(const IkSolution& sol) {
    IkSolution d;
    d.rot1_deg = -sol.rot1_deg;
    d.c_deg = sol.c_deg + 180.0;
    d.branch = sol.branch == Branch::Plus ? Branch::Minus : Branch::Plus;
    d.c_free = sol.c_free;
    return d;
}

}  // namespace maam

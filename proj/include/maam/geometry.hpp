#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>

namespace maam {

struct Vec3 {
    double x = 0.0, y = 0.0, z = 0.0;

    Vec3 operator+(const Vec3& o) const { return {x + o.x, y + o.y, z + o.z}; }
    Vec3 operator-(const Vec3& o) const { return {x - o.x, y - o.y, z - o.z}; }
    Vec3 operator*(double s) const { return {x * s, y * s, z * s}; }
    Vec3 operator/(double s) const { return {x / s, y / s, z / s}; }
    Vec3 operator-() const { return {-x, -y, -z}; }
    Vec3& operator+=(const Vec3& o) { x += o.x; y += o.y; z += o.z; return *this; }
    Vec3& operator-=(const Vec3& o) { x -= o.x; y -= o.y; z -= o.z; return *this; }

    double dot(const Vec3& o) const { return x * o.x + y * o.y + z * o.z; }
    Vec3 cross(const Vec3& o) const {
        return {y * o.z - z * o.y, z * o.x - x * o.z, x * o.y - y * o.x};
    }
    double norm2() const { return dot(*this); }
    double norm() const { return std::sqrt(norm2()); }
    Vec3 normalized() const { return *this / norm(); }
};

inline Vec3 operator*(double s, const Vec3& v) { return v * s; }

// Row-major 3x3 matrix; enough for the rigid/affine maps used here.
struct Mat3 {
    std::array<double, 9> m{1, 0, 0, 0, 1, 0, 0, 0, 1};

    static Mat3 identity() { return {}; }

    double operator()(int r, int c) const { return m[3 * r + c]; }
    double& operator()(int r, int c) { return m[3 * r + c]; }

    Vec3 operator*(const Vec3& v) const {
        return {m[0] * v.x + m[1] * v.y + m[2] * v.z,
                m[3] * v.x + m[4] * v.y + m[5] * v.z,
                m[6] * v.x + m[7] * v.y + m[8] * v.z};
    }

    Mat3 operator*(const Mat3& o) const {
        Mat3 r;
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) {
                double s = 0;
                for (int k = 0; k < 3; ++k) s += (*this)(i, k) * o(k, j);
                r(i, j) = s;
            }
        return r;
    }

    Mat3 transposed() const {
        Mat3 r;
        r.m = {m[0], m[3], m[6], m[1], m[4], m[7], m[2], m[5], m[8]};
        return r;
    }

    double det() const {
        return m[0] * (m[4] * m[8] - m[5] * m[7]) -
               m[1] * (m[3] * m[8] - m[5] * m[6]) +
               m[2] * (m[3] * m[7] - m[4] * m[6]);
    }

    Mat3 inverse() const {
        const double d = det();
        Mat3 r;
        r.m = {(m[4] * m[8] - m[5] * m[7]) / d, (m[2] * m[7] - m[1] * m[8]) / d,
               (m[1] * m[5] - m[2] * m[4]) / d, (m[5] * m[6] - m[3] * m[8]) / d,
               (m[0] * m[8] - m[2] * m[6]) / d, (m[2] * m[3] - m[0] * m[5]) / d,
               (m[3] * m[7] - m[4] * m[6]) / d, (m[1] * m[6] - m[0] * m[7]) / d,
               (m[0] * m[4] - m[1] * m[3]) / d};
        return r;
    }
};

// Rotation taking the +Z axis onto unit vector n (minimal-angle rotation).
inline Mat3 rotation_z_to(const Vec3& n) {
    const Vec3 z{0, 0, 1};
    const Vec3 axis = z.cross(n);
    const double s2 = axis.norm2();
    const double c = n.z;
    if (s2 < 1e-24) {
        if (c > 0) return Mat3::identity();
        Mat3 r;  // 180 deg about X
        r.m = {1, 0, 0, 0, -1, 0, 0, 0, -1};
        return r;
    }
    // Rodrigues with sin = |axis|, cos = c
    const Vec3 a = axis / std::sqrt(s2);
    const double s = std::sqrt(s2);
    Mat3 k;
    k.m = {0, -a.z, a.y, a.z, 0, -a.x, -a.y, a.x, 0};
    Mat3 r = Mat3::identity();
    for (int i = 0; i < 9; ++i) r.m[i] += s * k.m[i];
    Mat3 kk = k * k;
    for (int i = 0; i < 9; ++i) r.m[i] += (1 - c) * kk.m[i];
    return r;
}

constexpr double kPi = std::numbers::pi;

inline double deg2rad(double d) { return d * kPi / 180.0; }
inline double rad2deg(double r) { return r * 180.0 / kPi; }

// Wrap an angle in degrees into [-180, 180).
inline double wrap_deg(double a) {
    double r = std::fmod(a + 180.0, 360.0);
    if (r < 0) r += 360.0;
    return r - 180.0;
}

// Spherical linear interpolation between unit vectors.
inline Vec3 slerp(const Vec3& a, const Vec3& b, double t) {
    double c = std::clamp(a.dot(b), -1.0, 1.0);
    double ang = std::acos(c);
    if (ang < 1e-12) return (a * (1 - t) + b * t).normalized();
    double s = std::sin(ang);
    return (a * (std::sin((1 - t) * ang) / s) + b * (std::sin(t * ang) / s)).normalized();
}

}  // namespace maam

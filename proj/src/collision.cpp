#include "maam/collision.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "maam/errors.hpp"
#include "maam/singularity.hpp"

namespace maam {

namespace {

Vec3 farthest(std::span<const Vec3> pts, const Vec3& d) {
    Vec3 best = pts[0];
    double bd = best.dot(d);
    for (const Vec3& p : pts) {
        const double v = p.dot(d);
        if (v > bd) {
            bd = v;
            best = p;
        }
    }
    return best;
}

Vec3 closest_origin_segment(const Vec3& a, const Vec3& b, std::vector<Vec3>& out) {
    const Vec3 ab = b - a;
    const double dd = ab.norm2();
    const double t = -a.dot(ab);
    if (dd <= 0 || t <= 0) {
        out = {a};
        return a;
    }
    if (t >= dd) {
        out = {b};
        return b;
    }
    out = {a, b};
    return a + ab * (t / dd);
}

Vec3 closest_origin_triangle(const Vec3& a, const Vec3& b, const Vec3& c,
                             std::vector<Vec3>& out) {
    const Vec3 ab = b - a, ac = c - a, ap = -a;
    const double d1 = ab.dot(ap), d2 = ac.dot(ap);
    if (d1 <= 0 && d2 <= 0) {
        out = {a};
        return a;
    }
    const Vec3 bp = -b;
    const double d3 = ab.dot(bp), d4 = ac.dot(bp);
    if (d3 >= 0 && d4 <= d3) {
        out = {b};
        return b;
    }
    const double vc = d1 * d4 - d3 * d2;
    if (vc <= 0 && d1 >= 0 && d3 <= 0) {
        const double v = d1 / (d1 - d3);
        out = {a, b};
        return a + ab * v;
    }
    const Vec3 cp = -c;
    const double d5 = ab.dot(cp), d6 = ac.dot(cp);
    if (d6 >= 0 && d5 <= d6) {
        out = {c};
        return c;
    }
    const double vb = d5 * d2 - d1 * d6;
    if (vb <= 0 && d2 >= 0 && d6 <= 0) {
        const double w = d2 / (d2 - d6);
        out = {a, c};
        return a + ac * w;
    }
    const double va = d3 * d6 - d5 * d4;
    if (va <= 0 && (d4 - d3) >= 0 && (d5 - d6) >= 0) {
        const double w = (d4 - d3) / ((d4 - d3) + (d5 - d6));
        out = {b, c};
        return b + (c - b) * w;
    }
    const double denom = 1.0 / (va + vb + vc);
    out = {a, b, c};
    return a + ab * (vb * denom) + ac * (vc * denom);
}

Vec3 closest_origin_tetra(const Vec3& a, const Vec3& b, const Vec3& c, const Vec3& d,
                          std::vector<Vec3>& out) {
    const double vol = std::abs((b - a).dot((c - a).cross(d - a)));
    const Vec3 faces[4][4] = {
        {a, b, c, d}, {a, b, d, c}, {a, c, d, b}, {b, c, d, a}};
    bool any_outside = false;
    double best = std::numeric_limits<double>::max();
    Vec3 best_pt;
    std::vector<Vec3> best_set;
    std::vector<Vec3> tmp;
    for (const auto& f : faces) {
        const Vec3 n = (f[1] - f[0]).cross(f[2] - f[0]);
        const double sign_origin = -f[0].dot(n);
        const double sign_opp = n.dot(f[3] - f[0]);
        const bool degenerate = vol < 1e-18 || std::abs(sign_opp) < 1e-18;
        const bool outside = degenerate || sign_origin * sign_opp < 0;
        if (!outside) continue;
        any_outside = true;
        const Vec3 pt = closest_origin_triangle(f[0], f[1], f[2], tmp);
        const double dist = pt.norm2();
        if (dist < best) {
            best = dist;
            best_pt = pt;
            best_set = tmp;
        }
    }
    if (!any_outside) {
        out = {a, b, c, d};
        return {0, 0, 0};
    }
    out = best_set;
    return best_pt;
}

Vec3 closest_on_simplex(std::vector<Vec3>& w) {
    switch (w.size()) {
        case 1:
            return w[0];
        case 2:
            return closest_origin_segment(w[0], w[1], w);
        case 3:
            return closest_origin_triangle(w[0], w[1], w[2], w);
        default:
            return closest_origin_tetra(w[0], w[1], w[2], w[3], w);
    }
}

}  // namespace

double gjk_distance(std::span<const Vec3> a, std::span<const Vec3> b, double tol) {
    auto support = [&](const Vec3& d) { return farthest(a, d) - farthest(b, -d); };
    std::vector<Vec3> simplex{support({1, 0, 0})};
    double best = std::numeric_limits<double>::max();
    for (int it = 0; it < 64; ++it) {
        const Vec3 v = closest_on_simplex(simplex);
        const double vn = v.norm();
        if (vn < tol) return 0.0;
        if (vn >= best - tol) return best;
        best = vn;
        const Vec3 w = support(-v);
        // |v| - v.w/|v| bounds the remaining improvement
        if (vn - v.dot(w) / vn <= tol) return vn;
        bool dup = false;
        for (const Vec3& s : simplex)
            if ((s - w).norm2() < 1e-24) dup = true;
        if (dup) return vn;
        simplex.push_back(w);
    }
    return best;
}

uint64_t BeadGrid::key(int ix, int iy, int iz) const {
    const uint64_t off = 1u << 20;
    return (static_cast<uint64_t>(ix + off)) | (static_cast<uint64_t>(iy + off) << 21) |
           (static_cast<uint64_t>(iz + off) << 42);
}

void BeadGrid::insert(const Vec3& p) {
    const int ix = static_cast<int>(std::floor(p.x / cell_));
    const int iy = static_cast<int>(std::floor(p.y / cell_));
    const int iz = static_cast<int>(std::floor(p.z / cell_));
    cells_[key(ix, iy, iz)].push_back(p);
    ++count_;
}

void BeadGrid::query_aabb(const Vec3& lo, const Vec3& hi, std::vector<Vec3>& out) const {
    const int x0 = static_cast<int>(std::floor(lo.x / cell_));
    const int y0 = static_cast<int>(std::floor(lo.y / cell_));
    const int z0 = static_cast<int>(std::floor(lo.z / cell_));
    const int x1 = static_cast<int>(std::floor(hi.x / cell_));
    const int y1 = static_cast<int>(std::floor(hi.y / cell_));
    const int z1 = static_cast<int>(std::floor(hi.z / cell_));
    for (int ix = x0; ix <= x1; ++ix)
        for (int iy = y0; iy <= y1; ++iy)
            for (int iz = z0; iz <= z1; ++iz) {
                auto it = cells_.find(key(ix, iy, iz));
                if (it == cells_.end()) continue;
                out.insert(out.end(), it->second.begin(), it->second.end());
            }
}

namespace {

// Convex hull (monotone chain) of 2D points, counter-clockwise.
std::vector<std::array<double, 2>> hull_2d(std::vector<std::array<double, 2>> pts) {
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    if (pts.size() < 3) return pts;
    auto cross = [](const std::array<double, 2>& o, const std::array<double, 2>& a,
                    const std::array<double, 2>& b) {
        return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0]);
    };
    std::vector<std::array<double, 2>> h(2 * pts.size());
    size_t k = 0;
    for (const auto& p : pts) {
        while (k >= 2 && cross(h[k - 2], h[k - 1], p) <= 0) --k;
        h[k++] = p;
    }
    const size_t lower = k + 1;
    for (auto it = pts.rbegin(); it != pts.rend(); ++it) {
        while (k >= lower && cross(h[k - 2], h[k - 1], *it) <= 0) --k;
        h[k++] = *it;
    }
    h.resize(k - 1);
    return h;
}

}  // namespace

HeadHull HeadHull::from_points(std::vector<Vec3> pts) {
    if (pts.empty()) throw InvariantError("head hull needs vertices");
    HeadHull hull;
    hull.vertices = std::move(pts);
    for (const Vec3& v : hull.vertices)
        hull.bound_radius = std::max(hull.bound_radius, v.norm());
    const Vec3 origin{0, 0, 0};
    if (gjk_distance(std::span<const Vec3>(&origin, 1), hull.vertices) > 1e-6)
        throw InvariantError("head hull must contain the nozzle tip (origin)");
    std::vector<std::array<double, 2>> rz;
    double z_lo = hull.vertices[0].z, z_hi = z_lo;
    for (const Vec3& v : hull.vertices) {
        rz.push_back({std::hypot(v.x, v.y), v.z});
        z_lo = std::min(z_lo, v.z);
        z_hi = std::max(z_hi, v.z);
    }
    rz.push_back({0.0, z_lo});
    rz.push_back({0.0, z_hi});
    hull.profile = hull_2d(std::move(rz));
    return hull;
}

HeadHull HeadHull::from_mesh(const TriMesh& mesh) { return from_points(mesh.vertices); }

HeadHull HeadHull::default_head(double tip_len, double tip_r, double body_r, double body_h) {
    std::vector<Vec3> pts{{0, 0, 0}};
    const int sides = 12;
    for (int i = 0; i < sides; ++i) {
        const double a = 2 * kPi * i / sides;
        const double ca = std::cos(a), sa = std::sin(a);
        pts.push_back({tip_r * ca, tip_r * sa, tip_len});
        pts.push_back({body_r * ca, body_r * sa, tip_len});
        pts.push_back({body_r * ca, body_r * sa, tip_len + body_h});
    }
    return from_points(std::move(pts));
}

std::vector<Vec3> HeadHull::transformed(const Vec3& p, const Vec3& n) const {
    const Mat3 rot = rotation_z_to(n);
    std::vector<Vec3> out;
    out.reserve(vertices.size());
    for (const Vec3& v : vertices) out.push_back(p + rot * v);
    return out;
}

namespace {

constexpr double kContactTol = 1e-9;

// Distance from a (radial, z) point to the convex profile region; zero inside.
double profile_distance(const std::vector<std::array<double, 2>>& poly, double rho, double z) {
    if (poly.size() < 2) return 0.0;
    bool inside = true;
    double best = std::numeric_limits<double>::max();
    for (size_t i = 0; i < poly.size(); ++i) {
        const auto& a = poly[i];
        const auto& b = poly[(i + 1) % poly.size()];
        const double ex = b[0] - a[0], ey = b[1] - a[1];
        const double px = rho - a[0], py = z - a[1];
        if (ex * py - ey * px < 0) inside = false;
        const double dd = ex * ex + ey * ey;
        const double t = dd > 0 ? std::clamp((px * ex + py * ey) / dd, 0.0, 1.0) : 0.0;
        const double dx = px - t * ex, dy = py - t * ey;
        best = std::min(best, dx * dx + dy * dy);
    }
    return inside ? 0.0 : std::sqrt(best);
}

// Conservative lower bound on the distance from a world point to the hull
// posed at (p, rot): the hull is inside its revolution solid.
double pose_lower_bound(const HeadHull& hull, const Vec3& p, const Mat3& rot, const Vec3& q) {
    const Vec3 local = rot.transposed() * (q - p);
    return profile_distance(hull.profile, std::hypot(local.x, local.y), local.z);
}

// margin: how far the swept shape may extend beyond the pose at (p, rot).
int collide_convex(std::span<const Vec3> verts, const CollisionScene& scene,
                   const HeadHull& hull, const Vec3& p, const Mat3& rot, double margin) {
    Vec3 lo{std::numeric_limits<double>::max(), std::numeric_limits<double>::max(),
            std::numeric_limits<double>::max()};
    Vec3 hi = -lo;
    for (const Vec3& v : verts) {
        lo.x = std::min(lo.x, v.x);
        lo.y = std::min(lo.y, v.y);
        lo.z = std::min(lo.z, v.z);
        hi.x = std::max(hi.x, v.x);
        hi.y = std::max(hi.y, v.y);
        hi.z = std::max(hi.z, v.z);
    }
    if (lo.z <= scene.platform_z + kContactTol) return 1;
    for (const TriMesh& mesh : scene.layer_meshes) {
        const Vec3 mlo = mesh.aabb_min(), mhi = mesh.aabb_max();
        if (mlo.x > hi.x || mhi.x < lo.x || mlo.y > hi.y || mhi.y < lo.y || mlo.z > hi.z ||
            mhi.z < lo.z)
            continue;
        for (const auto& t : mesh.triangles) {
            const Vec3 tri[3] = {mesh.vertices[t[0]], mesh.vertices[t[1]], mesh.vertices[t[2]]};
            if (gjk_distance(verts, tri) <= kContactTol) return 1;
        }
    }
    if (scene.beads.size() > 0) {
        const double r = scene.beads.radius();
        std::vector<Vec3> nearby;
        scene.beads.query_aabb(lo - Vec3{r, r, r}, hi + Vec3{r, r, r}, nearby);
        for (const Vec3& q : nearby) {
            if (pose_lower_bound(hull, p, rot, q) - margin > r + kContactTol) continue;
            if (gjk_distance(verts, std::span<const Vec3>(&q, 1)) <= r + kContactTol) return 1;
        }
    }
    return 0;
}

}  // namespace

int gamma(const Vec3& p, const Orientation& n, const CollisionScene& scene,
          const HeadHull& hull) {
    const std::vector<Vec3> verts = hull.transformed(p, n.n);
    return collide_convex(verts, scene, hull, p, rotation_z_to(n.n), 0.0);
}

VariantSet sample_variants(const Waypoint& w, const CollisionScene& scene, const HeadHull& hull,
                           double beta_deg, int count, bool exclude_singular, double alpha_deg,
                           uint64_t rng_seed) {
    std::mt19937_64 rng(rng_seed);
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    const Mat3 frame = rotation_z_to(w.n.n);
    double beta = beta_deg;
    VariantSet out;
    out.base = w;
    while (true) {
        const double cos_beta = std::cos(deg2rad(beta));
        std::vector<Orientation> kept;
        // oversample: the collision-free region can be a small sliver of the
        // cap, so a bare `count` draws would give up far too early
        for (int i = 0; i < count * 8 && static_cast<int>(kept.size()) < count; ++i) {
            const double cz = 1.0 - uni(rng) * (1.0 - cos_beta);  // area-uniform on the cap
            const double phi = 2 * kPi * uni(rng);
            const double s = std::sqrt(std::max(0.0, 1.0 - cz * cz));
            const Vec3 local{s * std::cos(phi), s * std::sin(phi), cz};
            const Vec3 cand = (frame * local).normalized();
            if (cand.z < 0) continue;
            const Orientation o{cand};
            if (exclude_singular && is_singular(o, alpha_deg)) continue;
            if (gamma(w.p, o, scene, hull) == 0) kept.push_back(o);
        }
        if (!kept.empty()) {
            out.variants = std::move(kept);
            out.beta_deg = beta;
            return out;
        }
        beta *= 1.1;
        if (beta >= 90.0) throw NoFeasibleOrientation(-1);
    }
}

int swept_collision(const Vec3& p_a, const Orientation& n_a, const Vec3& p_b,
                    const Orientation& n_b, const CollisionScene& scene, const HeadHull& hull) {
    std::vector<Vec3> verts = hull.transformed(p_a, n_a.n);
    const std::vector<Vec3> vb = hull.transformed(p_b, n_b.n);
    verts.insert(verts.end(), vb.begin(), vb.end());
    // pose B stays within |dp| + R * angle of pose A
    const double angle = std::acos(std::clamp(n_a.n.dot(n_b.n), -1.0, 1.0));
    const double margin = (p_b - p_a).norm() + hull.bound_radius * angle;
    return collide_convex(verts, scene, hull, p_a, rotation_z_to(n_a.n), margin);
}

}  // namespace maam

#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <unordered_map>
#include <vector>

#include "maam/mesh.hpp"
#include "maam/toolpath.hpp"

namespace maam {

// Minimum distance between the convex hulls of two point sets (GJK).
// Returns 0 when the hulls intersect or touch.
double gjk_distance(std::span<const Vec3> a, std::span<const Vec3> b, double tol = 1e-9);

// Printed beads of the in-progress layer, hashed on a uniform grid.
class BeadGrid {
public:
    explicit BeadGrid(double radius = 0.2, double cell = 8.0)
        : radius_(radius), cell_(cell) {}

    double radius() const { return radius_; }
    void set_radius(double r) { radius_ = r; }
    size_t size() const { return count_; }

    void insert(const Vec3& p);
    // Collect all stored points whose cell overlaps [lo, hi]. May return
    // extra points; callers must check actual distances.
    void query_aabb(const Vec3& lo, const Vec3& hi, std::vector<Vec3>& out) const;

private:
    uint64_t key(int ix, int iy, int iz) const;
    double radius_;
    double cell_;
    size_t count_ = 0;
    std::unordered_map<uint64_t, std::vector<Vec3>> cells_;
};

struct CollisionScene {
    double platform_z = 0.0;            // half-space z <= platform_z is solid
    std::vector<TriMesh> layer_meshes;  // fully printed layers
    BeadGrid beads{0.2};                // in-progress layer
};

// Convex hull of the printer head in the tool frame: tip at the origin,
// nozzle axis along +Z.
struct HeadHull {
    std::vector<Vec3> vertices;
    bool axis_symmetric = true;
    double bound_radius = 0.0;
    // Convex (radial, z) chain of the revolution solid containing the hull;
    // used as a conservative distance prefilter for bead checks.
    std::vector<std::array<double, 2>> profile;

    static HeadHull from_points(std::vector<Vec3> pts);
    static HeadHull from_mesh(const TriMesh& mesh);
    // Simple cone-plus-block shape used as a default head model.
    static HeadHull default_head(double tip_len = 5.0, double tip_r = 1.0, double body_r = 20.0,
                                 double body_h = 40.0);

    // Vertices with the tip placed at p and +Z rotated onto n.
    std::vector<Vec3> transformed(const Vec3& p, const Vec3& n) const;
};

// Collision-indication function: 1 iff the transformed head hull intersects
// the platform, a printed-layer mesh, or a printed bead. Contact counts.
int gamma(const Vec3& p, const Orientation& n, const CollisionScene& scene, const HeadHull& hull);

struct VariantSet {
    Waypoint base;
    std::vector<Orientation> variants;
    double beta_deg = 45.0;
};

// Collision-free orientations sampled uniformly on the spherical cap of
// half-angle beta around the base orientation. The cap grows by 10% per
// failed round; throws NoFeasibleOrientation once it would reach 90 degrees.
VariantSet sample_variants(const Waypoint& w, const CollisionScene& scene, const HeadHull& hull,
                           double beta_deg, int count, bool exclude_singular, double alpha_deg,
                           uint64_t rng_seed);

// Conservative sweep check: convex hull of the head at both poses against
// the scene.
int swept_collision(const Vec3& p_a, const Orientation& n_a, const Vec3& p_b,
                    const Orientation& n_b, const CollisionScene& scene, const HeadHull& hull);

}  // namespace maam

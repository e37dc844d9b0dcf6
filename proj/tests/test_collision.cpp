#include <cmath>
#include <random>

#include "doctest.h"
#include "maam/collision.hpp"
#include "maam/singularity.hpp"

using namespace maam;

namespace {

std::vector<Vec3> cube(const Vec3& center, double half) {
    std::vector<Vec3> v;
    for (int i = 0; i < 8; ++i)
        v.push_back({center.x + (i & 1 ? half : -half), center.y + (i & 2 ? half : -half),
                     center.z + (i & 4 ? half : -half)});
    return v;
}

}  // namespace

TEST_CASE("gjk_distance") {
    SUBCASE("separated cubes along X") {
        const auto a = cube({0, 0, 0}, 1);
        const auto b = cube({5, 0, 0}, 1);
        CHECK(gjk_distance(a, b) == doctest::Approx(3.0).epsilon(1e-9));
    }
    SUBCASE("touching counts as contact") {
        const auto a = cube({0, 0, 0}, 1);
        const auto b = cube({2, 0, 0}, 1);
        CHECK(gjk_distance(a, b) == doctest::Approx(0.0));
    }
    SUBCASE("overlap is zero") {
        const auto a = cube({0, 0, 0}, 1);
        const auto b = cube({1, 0.5, -0.25}, 1);
        CHECK(gjk_distance(a, b) == 0.0);
    }
    SUBCASE("point to segment") {
        const std::vector<Vec3> p{{0, 0, 3}};
        const std::vector<Vec3> seg{{-1, 0, 0}, {1, 0, 0}};
        CHECK(gjk_distance(p, seg) == doctest::Approx(3.0).epsilon(1e-9));
    }
    SUBCASE("diagonal corner distance") {
        const auto a = cube({0, 0, 0}, 1);
        const auto b = cube({4, 4, 4}, 1);
        CHECK(gjk_distance(a, b) == doctest::Approx(2 * std::sqrt(3.0)).epsilon(1e-8));
    }
    SUBCASE("random sphere pairs agree with the analytic distance") {
        std::mt19937_64 rng(17);
        std::uniform_real_distribution<double> u(-10.0, 10.0);
        std::uniform_real_distribution<double> ur(0.5, 3.0);
        for (int it = 0; it < 200; ++it) {
            const Vec3 ca{u(rng), u(rng), u(rng)};
            const Vec3 cb{u(rng), u(rng), u(rng)};
            const double ra = ur(rng), rb = ur(rng);
            // icosahedron-ish point clouds on each sphere
            std::vector<Vec3> a, b;
            for (int i = 0; i < 40; ++i) {
                std::uniform_real_distribution<double> uz(-1.0, 1.0);
                std::uniform_real_distribution<double> ua(0.0, 2 * kPi);
                const double z = uz(rng), t = ua(rng), s = std::sqrt(1 - z * z);
                a.push_back(ca + Vec3{s * std::cos(t), s * std::sin(t), z} * ra);
                const double z2 = uz(rng), t2 = ua(rng), s2 = std::sqrt(1 - z2 * z2);
                b.push_back(cb + Vec3{s2 * std::cos(t2), s2 * std::sin(t2), z2} * rb);
            }
            const double d = gjk_distance(a, b);
            // hull of samples is inside the spheres: d >= center gap
            const double gap = (cb - ca).norm() - ra - rb;
            if (gap > 0.5) CHECK(d >= gap - 1e-9);
            CHECK(d <= std::max(0.0, (cb - ca).norm()) + 1e-9);
        }
    }
}

TEST_CASE("BeadGrid") {
    BeadGrid grid(0.2, 4.0);
    grid.insert({0, 0, 0});
    grid.insert({10, 0, 0});
    grid.insert({0.5, 0.5, 0});
    CHECK(grid.size() == 3);
    std::vector<Vec3> out;
    grid.query_aabb({-1, -1, -1}, {1, 1, 1}, out);
    // superset is allowed, but the near points must be present
    int near = 0;
    for (const Vec3& p : out)
        if (p.norm() < 2) ++near;
    CHECK(near == 2);
    out.clear();
    grid.query_aabb({100, 100, 100}, {101, 101, 101}, out);
    CHECK(out.empty());
}

TEST_CASE("gamma against the platform") {
    CollisionScene scene;
    scene.platform_z = 0.0;
    const HeadHull hull = HeadHull::default_head();
    SUBCASE("vertical head above the platform is free") {
        CHECK(gamma({0, 0, 1.0}, Orientation{{0, 0, 1}}, scene, hull) == 0);
    }
    SUBCASE("tip on the platform is contact") {
        CHECK(gamma({0, 0, 0}, Orientation{{0, 0, 1}}, scene, hull) == 1);
    }
    SUBCASE("tilted head dips the body below the platform") {
        // tip slightly above the platform, axis tilted 60 degrees: the wide
        // body sweeps below z=0
        const double t = deg2rad(60);
        const Orientation n{{std::sin(t), 0, std::cos(t)}};
        CHECK(gamma({0, 0, 0.5}, n, scene, hull) == 1);
        CHECK(gamma({0, 0, 30.0}, n, scene, hull) == 0);
    }
}

TEST_CASE("gamma against printed layers and beads") {
    CollisionScene scene;
    scene.platform_z = -100.0;
    const HeadHull hull = HeadHull::default_head();

    TriMesh wall;
    wall.vertices = {{5, -5, 0}, {5, 5, 0}, {5, 5, 30}, {5, -5, 30}};
    wall.triangles = {{0, 1, 2}, {0, 2, 3}};
    scene.layer_meshes.push_back(wall);

    SUBCASE("mesh clearance") {
        CHECK(gamma({-30, 0, 5}, Orientation{{0, 0, 1}}, scene, hull) == 0);
        CHECK(gamma({4, 0, 5}, Orientation{{0, 0, 1}}, scene, hull) == 1);
    }
    SUBCASE("bead contact") {
        scene.beads.set_radius(0.2);
        scene.beads.insert({0.5, 0, 2});
        // bead sits next to the tip cone at its height
        CHECK(gamma({-30, 0, 0}, Orientation{{0, 0, 1}}, scene, hull) == 0);
        CHECK(gamma({0, 0, 1.5}, Orientation{{0, 0, 1}}, scene, hull) == 1);
    }
}

TEST_CASE("HeadHull construction") {
    SUBCASE("hull must contain the nozzle tip") {
        CHECK_THROWS_AS(HeadHull::from_points({{0, 0, 1}, {1, 0, 5}, {-1, 0, 5}, {0, 1, 5}}),
                        InvariantError);
    }
    SUBCASE("transformed places the tip at p") {
        const HeadHull hull = HeadHull::default_head();
        const Vec3 p{3, -2, 7};
        const auto pts = hull.transformed(p, Vec3{0, 0, 1});
        double min_z = 1e300;
        for (const Vec3& v : pts) min_z = std::min(min_z, v.z);
        CHECK(min_z == doctest::Approx(p.z).epsilon(1e-12));
    }
    SUBCASE("transform is rigid") {
        const HeadHull hull = HeadHull::default_head();
        const Vec3 n = Vec3{1, 1, 1}.normalized();
        const auto pts = hull.transformed({0, 0, 0}, n);
        REQUIRE(pts.size() == hull.vertices.size());
        for (size_t i = 0; i < pts.size(); ++i)
            CHECK(pts[i].norm() == doctest::Approx(hull.vertices[i].norm()).epsilon(1e-9));
    }
}

TEST_CASE("sample_variants") {
    const HeadHull hull = HeadHull::default_head();
    Waypoint w;
    w.p = {0, 0, 10};
    w.n = Orientation{{0, 0, 1}};

    SUBCASE("free scene yields the requested count inside the cap") {
        CollisionScene scene;
        scene.platform_z = -1000.0;
        const double beta = 30.0;
        const VariantSet vs = sample_variants(w, scene, hull, beta, 16, false, 4.5, 99);
        CHECK(vs.variants.size() == 16);
        const double cos_beta = std::cos(deg2rad(beta));
        for (const Orientation& n : vs.variants) CHECK(n.n.dot(w.n.n) >= cos_beta - 1e-12);
    }
    SUBCASE("deterministic for a fixed seed") {
        CollisionScene scene;
        scene.platform_z = -1000.0;
        const VariantSet a = sample_variants(w, scene, hull, 30, 8, false, 4.5, 7);
        const VariantSet b = sample_variants(w, scene, hull, 30, 8, false, 4.5, 7);
        REQUIRE(a.variants.size() == b.variants.size());
        for (size_t i = 0; i < a.variants.size(); ++i)
            CHECK((a.variants[i].n - b.variants[i].n).norm() == 0.0);
    }
    SUBCASE("exclude_singular keeps samples out of the cone") {
        CollisionScene scene;
        scene.platform_z = -1000.0;
        const double alpha = 20.0;  // wide cone so rejection actually bites
        const VariantSet vs = sample_variants(w, scene, hull, 45, 32, true, alpha, 3);
        for (const Orientation& n : vs.variants) CHECK_FALSE(is_singular(n, alpha));
    }
    SUBCASE("returned variants are collision free") {
        CollisionScene scene;
        scene.platform_z = -1000.0;
        TriMesh wall;
        wall.vertices = {{3, -20, 0}, {3, 20, 0}, {3, 20, 60}, {3, -20, 60}};
        wall.triangles = {{0, 1, 2}, {0, 2, 3}};
        scene.layer_meshes.push_back(wall);
        Waypoint w2 = w;
        w2.p = {-5, 0, 10};
        const VariantSet vs = sample_variants(w2, scene, hull, 45, 8, false, 4.5, 11);
        for (const Orientation& n : vs.variants) CHECK(gamma(w2.p, n, scene, hull) == 0);
    }
    SUBCASE("boxed-in waypoint throws") {
        CollisionScene scene;
        scene.platform_z = 100.0;  // head always below the platform surface
        CHECK_THROWS_AS(sample_variants(w, scene, hull, 30, 8, false, 4.5, 1),
                        NoFeasibleOrientation);
    }
}

TEST_CASE("swept_collision") {
    CollisionScene scene;
    scene.platform_z = -1000.0;
    const HeadHull hull = HeadHull::default_head();
    TriMesh pillar;
    pillar.vertices = {{0, -1, 0}, {0, 1, 0}, {0, 1, 40}, {0, -1, 40}};
    pillar.triangles = {{0, 1, 2}, {0, 2, 3}};
    scene.layer_meshes.push_back(pillar);
    const Orientation up{{0, 0, 1}};
    // each endpoint is clear of the pillar, the straight sweep is not
    CHECK(gamma({-30, 0, 5}, up, scene, hull) == 0);
    CHECK(gamma({30, 0, 5}, up, scene, hull) == 0);
    CHECK(swept_collision({-30, 0, 5}, up, {30, 0, 5}, up, scene, hull) == 1);
    CHECK(swept_collision({-60, 0, 5}, up, {-40, 0, 5}, up, scene, hull) == 0);
}

#include <cmath>
#include <random>

#include "doctest.h"
#include "maam/planner.hpp"

using namespace maam;

namespace {

MachineConfig bc_cfg() {
    MachineConfig cfg;
    cfg.kind = ConfigKind::ConfigI;
    cfg.rotary = RotaryLayout::BC;
    return cfg;
}

Toolpath path_from(const std::vector<Orientation>& ns, double z = 10.0) {
    Toolpath tp;
    for (size_t i = 0; i < ns.size(); ++i) {
        Waypoint w;
        w.p = {static_cast<double>(i), 0, z};
        w.n = ns[i];
        tp.waypoints.push_back(w);
    }
    return tp;
}

Orientation tilt(double b_deg, double c_deg) {
    return fk_orientation(b_deg, c_deg, RotaryLayout::BC);
}

}  // namespace

TEST_CASE("edge_weight") {
    SUBCASE("direct evaluation") {
        const IkSolution a{10, 0, Branch::Plus, false};
        const IkSolution b{15, 20, Branch::Plus, false};
        CHECK(edge_weight(a, b) == doctest::Approx(25.0));
    }
    SUBCASE("wound azimuth across the seam") {
        const IkSolution a{10, 170, Branch::Plus, false};
        const IkSolution b{10, -170, Branch::Plus, false};
        CHECK(edge_weight(a, b) == doctest::Approx(20.0));
    }
    SUBCASE("free C drops the azimuth term") {
        const IkSolution a{10, 170, Branch::Plus, false};
        const IkSolution b{0, 0, Branch::Plus, true};
        CHECK(edge_weight(a, b) == doctest::Approx(10.0));
    }
    SUBCASE("symmetry") {
        const IkSolution a{-30, 44, Branch::Plus, false};
        const IkSolution b{12, -120, Branch::Minus, false};
        CHECK(edge_weight(a, b) == doctest::Approx(edge_weight(b, a)));
    }
}

TEST_CASE("build_graph") {
    const MachineConfig cfg = bc_cfg();
    SUBCASE("two branch nodes per plain waypoint, bipartite edges") {
        const Toolpath tp = path_from({tilt(20, 0), tilt(20, 10), tilt(20, 20)});
        const Graph g = build_graph(tp, std::vector<ColumnSpec>(3), cfg);
        REQUIRE(g.columns.size() == 3);
        for (const auto& col : g.columns) CHECK(col.size() == 2);
        CHECK(g.node_count() == 6);
        for (int id : g.columns[0]) CHECK(g.out[id].size() == 2);
        for (int id : g.columns[2]) CHECK(g.out[id].empty());
        // branch nodes realize the same orientation
        const GraphNode& n0 = g.nodes[g.columns[0][0]];
        const GraphNode& n1 = g.nodes[g.columns[0][1]];
        const Orientation a = fk_orientation(n0.sol.rot1_deg, n0.sol.c_deg, cfg.rotary);
        const Orientation b = fk_orientation(n1.sol.rot1_deg, n1.sol.c_deg, cfg.rotary);
        CHECK((a.n - b.n).norm() < 1e-9);
    }
    SUBCASE("variant columns get two nodes per variant") {
        const Toolpath tp = path_from({tilt(20, 0), tilt(20, 10)});
        std::vector<ColumnSpec> specs(2);
        VariantSet vs;
        vs.base = tp.waypoints[1];
        vs.variants = {tilt(25, 10), tilt(15, 10), tilt(20, 30)};
        specs[1].variants = vs;
        const Graph g = build_graph(tp, specs, cfg);
        CHECK(g.columns[0].size() == 2);
        CHECK(g.columns[1].size() == 6);
        for (int id : g.columns[1]) CHECK(g.nodes[id].source == NodeSource::Variant);
    }
    SUBCASE("branch constraint filters a column") {
        const Toolpath tp = path_from({tilt(20, 0), tilt(20, 10)});
        std::vector<ColumnSpec> specs(2);
        specs[1].branch_constraint = Branch::Minus;
        const Graph g = build_graph(tp, specs, cfg);
        REQUIRE(g.columns[1].size() == 1);
        CHECK(g.nodes[g.columns[1][0]].sol.branch == Branch::Minus);
    }
    SUBCASE("empty variant set throws") {
        const Toolpath tp = path_from({tilt(20, 0), tilt(20, 10)});
        std::vector<ColumnSpec> specs(2);
        specs[1].variants = VariantSet{};
        CHECK_THROWS_AS(build_graph(tp, specs, cfg), EmptyColumn);
    }
}

TEST_CASE("shortest_trajectory") {
    const MachineConfig cfg = bc_cfg();
    SUBCASE("prefers the branch chain with no azimuth flips") {
        // steady tilt: staying on one branch costs nothing in B and little
        // in C; hopping branches costs 180-degree C swings
        const Toolpath tp =
            path_from({tilt(20, 0), tilt(20, 5), tilt(20, 10), tilt(20, 15)});
        const Graph g = build_graph(tp, std::vector<ColumnSpec>(4), cfg);
        const Trajectory traj = shortest_trajectory(g, tp);
        REQUIRE(traj.nodes.size() == 4);
        const Branch b0 = traj.nodes[0].sol.branch;
        for (const TrajectoryNode& n : traj.nodes) CHECK(n.sol.branch == b0);
        CHECK(traj.cost == doctest::Approx(15.0).epsilon(1e-9));
    }
    SUBCASE("matches brute force on random graphs") {
        std::mt19937_64 rng(23);
        std::uniform_real_distribution<double> ub(5.0, 60.0);
        std::uniform_real_distribution<double> uc(-180.0, 180.0);
        for (int it = 0; it < 100; ++it) {
            const int cols = 2 + static_cast<int>(rng() % 5);
            std::vector<Orientation> ns;
            for (int i = 0; i < cols; ++i) ns.push_back(tilt(ub(rng), uc(rng)));
            const Toolpath tp = path_from(ns);
            const Graph g = build_graph(tp, std::vector<ColumnSpec>(cols), cfg);
            const Trajectory traj = shortest_trajectory(g, tp);
            // exhaustive enumeration over branch choices
            double best = 1e300;
            const int combos = 1 << cols;
            for (int mask = 0; mask < combos; ++mask) {
                double cost = 0;
                for (int i = 0; i + 1 < cols; ++i) {
                    const GraphNode& a = g.nodes[g.columns[i][(mask >> i) & 1]];
                    const GraphNode& b = g.nodes[g.columns[i + 1][(mask >> (i + 1)) & 1]];
                    cost += edge_weight(a.sol, b.sol);
                }
                best = std::min(best, cost);
            }
            REQUIRE(traj.cost == doctest::Approx(best).epsilon(1e-9));
        }
    }
    SUBCASE("column sub-range") {
        const Toolpath tp =
            path_from({tilt(20, 0), tilt(20, 5), tilt(20, 10), tilt(20, 15)});
        const Graph g = build_graph(tp, std::vector<ColumnSpec>(4), cfg);
        const Trajectory traj = shortest_trajectory(g, tp, 1, 2);
        REQUIRE(traj.nodes.size() == 2);
        CHECK(traj.nodes[0].waypoint_index == 1);
        CHECK(traj.nodes[1].waypoint_index == 2);
        CHECK(traj.cost == doctest::Approx(5.0).epsilon(1e-9));
    }
    SUBCASE("disconnected graph throws NoPath") {
        const Toolpath tp = path_from({tilt(20, 0), tilt(20, 5), tilt(20, 10)});
        Graph g = build_graph(tp, std::vector<ColumnSpec>(3), cfg);
        for (int id : g.columns[1]) g.out[id].clear();
        CHECK_THROWS_AS(shortest_trajectory(g, tp), NoPath);
    }
}

TEST_CASE("prune_edges") {
    const MachineConfig cfg = bc_cfg();
    const HeadHull hull = HeadHull::default_head();
    CollisionScene scene;
    scene.platform_z = -1000.0;
    TriMesh pillar;
    pillar.vertices = {{1.0, -0.5, 0}, {1.0, 0.5, 0}, {1.0, 0.5, 60}, {1.0, -0.5, 60}};
    pillar.triangles = {{0, 1, 2}, {0, 2, 3}};
    scene.layer_meshes.push_back(pillar);

    // two waypoints on either side of the pillar: every swept edge collides
    Toolpath tp;
    {
        Waypoint a, b;
        a.p = {-30, 0, 5};
        b.p = {30, 0, 5};
        a.n = b.n = tilt(20, 0);
        tp.waypoints = {a, b};
    }
    Graph g = build_graph(tp, std::vector<ColumnSpec>(2), cfg);
    const auto cuts = prune_edges(g, tp, scene, hull);
    REQUIRE(cuts.size() == 1);
    CHECK(cuts[0] == 0);
    for (int id : g.columns[0]) CHECK(g.out[id].empty());

    // far from the pillar nothing is pruned
    Toolpath clear_tp = tp;
    clear_tp.waypoints[0].p = {-300, 200, 5};
    clear_tp.waypoints[1].p = {-260, 200, 5};
    Graph g2 = build_graph(clear_tp, std::vector<ColumnSpec>(2), cfg);
    CHECK(prune_edges(g2, clear_tp, scene, hull).empty());
    for (int id : g2.columns[0]) CHECK(g2.out[id].size() == 2);
}

TEST_CASE("finalize") {
    const MachineConfig cfg = bc_cfg();
    ExtrusionParams params;
    params.f_min = 0.8;
    params.f_max = 20.0;
    SUBCASE("unwraps C, fills machine axes, computes feed") {
        Toolpath tp = path_from({tilt(20, 170), tilt(20, -170), tilt(20, -150)});
        for (Waypoint& w : tp.waypoints) {
            w.thickness = 0.4;
            w.width = 0.4;
        }
        const Graph g = build_graph(tp, std::vector<ColumnSpec>(3), cfg);
        Trajectory traj = shortest_trajectory(g, tp);
        finalize(traj, cfg, params, 45.0);
        REQUIRE(traj.segments.size() == 2);
        // unwrapped C is monotone through the seam, no 340-degree jumps
        for (size_t i = 0; i + 1 < traj.nodes.size(); ++i) {
            const double dc = traj.nodes[i + 1].sol.c_deg - traj.nodes[i].sol.c_deg;
            CHECK(std::abs(dc) <= 45.0 + 1e-9);
        }
        CHECK(traj.breaks.empty());
        for (const TrajectorySegment& s : traj.segments) {
            CHECK(s.window.v_min <= s.feed + 1e-12);
            CHECK(s.feed <= s.window.v_max + 1e-12);
            CHECK(s.delta_e == doctest::Approx(s.window.delta_e));
        }
        // machine axes agree with the direct linear IK
        for (const TrajectoryNode& n : traj.nodes) {
            const Vec3 xyz = ik_linear(n.p_wcs, n.sol, cfg);
            CHECK((n.xyz - xyz).norm() < 1e-12);
        }
    }
    SUBCASE("inserts a break on an extreme C step") {
        Toolpath tp = path_from({tilt(20, 0), tilt(20, 120)});
        for (Waypoint& w : tp.waypoints) {
            w.thickness = 0.4;
            w.width = 0.4;
        }
        const Graph g = build_graph(tp, std::vector<ColumnSpec>(2), cfg);
        Trajectory traj = shortest_trajectory(g, tp);
        finalize(traj, cfg, params, 45.0);
        REQUIRE(traj.breaks.size() == 1);
        CHECK(traj.segments[traj.breaks[0]].is_break);
    }
}

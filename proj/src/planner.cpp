#include "maam/planner.hpp"

#include <cmath>
#include <limits>
#include <queue>

#include "maam/errors.hpp"

namespace maam {

double edge_weight(const IkSolution& a, const IkSolution& b) {
    const double db = std::abs(b.rot1_deg - a.rot1_deg);
    if (a.c_free || b.c_free) return db;  // pole inherits the neighbor's C
    return db + std::abs(wound_c_distance(a.c_deg, b.c_deg).delta);
}

Graph build_graph(const Toolpath& tp, const std::vector<ColumnSpec>& specs,
                  const MachineConfig& cfg) {
    const int n = static_cast<int>(tp.waypoints.size());
    Graph g;
    g.columns.resize(n);
    for (int i = 0; i < n; ++i) {
        const Waypoint& w = tp.waypoints[i];
        const ColumnSpec& spec = specs[i];
        auto add_orientation = [&](const Orientation& o, NodeSource src) {
            const IkPair pair = ik_rotational(o, cfg);
            auto add = [&](const IkSolution& sol) {
                if (spec.branch_constraint && sol.branch != *spec.branch_constraint) return;
                g.columns[i].push_back(g.node_count());
                g.nodes.push_back({i, sol, o, src});
            };
            add(pair.plus);
            add(pair.minus);
        };
        if (spec.variants) {
            for (const Orientation& o : spec.variants->variants)
                add_orientation(o, NodeSource::Variant);
        } else {
            add_orientation(w.n, w.status == WaypointStatus::SingularProcessed
                                     ? NodeSource::SingularProcessed
                                     : NodeSource::Original);
        }
        if (g.columns[i].empty()) throw EmptyColumn(i);
    }
    g.out.resize(g.node_count());
    for (int i = 0; i + 1 < n; ++i)
        for (int a : g.columns[i])
            for (int b : g.columns[i + 1])
                g.out[a].push_back({b, edge_weight(g.nodes[a].sol, g.nodes[b].sol)});
    return g;
}

std::vector<int> prune_edges(Graph& g, const Toolpath& tp, const CollisionScene& scene,
                             const HeadHull& hull) {
    std::vector<int> cuts;
    const int n = static_cast<int>(g.columns.size());
    for (int i = 0; i + 1 < n; ++i) {
        for (int a : g.columns[i]) {
            auto& edges = g.out[a];
            std::erase_if(edges, [&](const GraphEdge& e) {
                return swept_collision(tp.waypoints[i].p, g.nodes[a].n,
                                       tp.waypoints[i + 1].p, g.nodes[e.to].n, scene, hull) != 0;
            });
        }
    }
    // A column can become unreachable even when every column keeps some edges,
    // so cuts are found by a forward reachability sweep. After a cut the search
    // restarts from every node of the next column, so the sweep resets too.
    std::vector<char> reach(g.node_count(), 0);
    for (int id : g.columns[0]) reach[id] = 1;
    for (int i = 0; i + 1 < n; ++i) {
        bool any = false;
        for (int a : g.columns[i]) {
            if (!reach[a]) continue;
            for (const GraphEdge& e : g.out[a]) {
                reach[e.to] = 1;
                any = true;
            }
        }
        if (!any) {
            cuts.push_back(i);
            for (int id : g.columns[i + 1]) reach[id] = 1;
        }
    }
    return cuts;
}

Trajectory shortest_trajectory(const Graph& g, const Toolpath& tp, int first_col,
                               int last_col) {
    if (last_col < 0) last_col = static_cast<int>(g.columns.size()) - 1;
    const int n = g.node_count();
    const int src = n, sink = n + 1;
    std::vector<double> dist(n + 2, std::numeric_limits<double>::infinity());
    std::vector<int> pred(n + 2, -1);
    using Item = std::pair<double, int>;  // (dist, id); id breaks ties
    std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
    dist[src] = 0;
    pq.push({0, src});
    std::vector<bool> is_last(n, false);
    for (int id : g.columns[last_col]) is_last[id] = true;
    std::vector<bool> done(n + 2, false);
    while (!pq.empty()) {
        auto [d, u] = pq.top();
        pq.pop();
        if (done[u]) continue;
        done[u] = true;
        auto relax = [&](int v, double w) {
            const double nd = d + w;
            if (nd < dist[v] || (nd == dist[v] && pred[v] >= 0 && u < pred[v])) {
                dist[v] = nd;
                pred[v] = u;
                pq.push({nd, v});
            }
        };
        if (u == src) {
            for (int id : g.columns[first_col]) relax(id, 0);
        } else if (u != sink) {
            if (is_last[u]) {
                relax(sink, 0);
            } else {
                for (const GraphEdge& e : g.out[u]) relax(e.to, e.weight);
            }
        }
    }
    if (!std::isfinite(dist[sink])) {
        // locate the first unreachable column for the diagnostic
        int bad = last_col;
        for (int i = first_col; i <= last_col; ++i) {
            bool reach = false;
            for (int id : g.columns[i]) reach |= std::isfinite(dist[id]);
            if (!reach) {
                bad = i;
                break;
            }
        }
        throw NoPath(bad);
    }
    std::vector<int> path;
    for (int u = pred[sink]; u != src && u != -1; u = pred[u]) path.push_back(u);
    std::reverse(path.begin(), path.end());

    Trajectory traj;
    traj.cost = dist[sink];
    traj.nodes.reserve(path.size());
    for (int id : path) {
        const GraphNode& node = g.nodes[id];
        const Waypoint& w = tp.waypoints[node.waypoint_index];
        TrajectoryNode tn;
        tn.waypoint_index = node.waypoint_index;
        tn.sol = node.sol;
        tn.n = node.n;
        tn.p_wcs = w.p;
        tn.thickness = w.thickness;
        tn.width = w.width;
        traj.nodes.push_back(tn);
    }
    return traj;
}

void finalize(Trajectory& traj, const MachineConfig& cfg, const ExtrusionParams& params,
              double delta_c_max) {
    if (traj.nodes.empty()) return;
    // unwrap C forward along the path; pole nodes inherit the running C
    double c_prev = 0;
    bool have_c = false;
    for (TrajectoryNode& tn : traj.nodes) {
        if (tn.sol.c_free) {
            // with a concrete C substituted, later C moves are real rotations
            tn.sol.c_deg = have_c ? c_prev : 0.0;
            tn.sol.c_free = false;
        } else if (!have_c) {
            tn.sol.c_deg = wrap_deg(tn.sol.c_deg);
        } else {
            tn.sol.c_deg = wound_c_distance(c_prev, tn.sol.c_deg).c_to_unwrapped;
        }
        c_prev = tn.sol.c_deg;
        have_c = true;
        tn.xyz = ik_linear(tn.p_wcs, tn.sol, cfg);
    }
    traj.segments.clear();
    traj.segments.resize(traj.nodes.size() - 1);
    traj.breaks.clear();
    for (size_t i = 0; i + 1 < traj.nodes.size(); ++i) {
        const TrajectoryNode& a = traj.nodes[i];
        const TrajectoryNode& b = traj.nodes[i + 1];
        TrajectorySegment& seg = traj.segments[i];
        Waypoint wa{a.p_wcs, a.n, a.thickness, a.width, WaypointStatus::Unchanged};
        Waypoint wb{b.p_wcs, b.n, b.thickness, b.width, WaypointStatus::Unchanged};
        seg.window = speed_window(wa, wb, params);
        seg.delta_e = seg.window.delta_e;
        const double dist = (b.p_wcs - a.p_wcs).norm();
        const TipSpeed ts = achievable_tip_speed(a.sol, a.xyz, b.sol, b.xyz, dist, cfg,
                                                 seg.window);
        seg.v_achievable = ts.v;
        seg.feed = std::clamp(ts.v, seg.window.v_min, seg.window.v_max);
        if (std::abs(b.sol.c_deg - a.sol.c_deg) > delta_c_max) {
            seg.is_break = true;
            traj.breaks.push_back(static_cast<int>(i));
        }
    }
}

}  // namespace maam

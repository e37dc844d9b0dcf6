#pragma once

#include <optional>
#include <vector>

#include "maam/collision.hpp"
#include "maam/extrusion.hpp"
#include "maam/toolpath.hpp"

namespace maam {

enum class NodeSource { Original, SingularProcessed, Variant };

struct GraphNode {
    int waypoint_index = 0;
    IkSolution sol;
    Orientation n;  // orientation realized by sol
    NodeSource source = NodeSource::Original;
};

struct GraphEdge {
    int to = 0;
    double weight = 0;  // |dB| + wound |dC|, degrees
};

struct Graph {
    std::vector<GraphNode> nodes;
    std::vector<std::vector<int>> columns;     // node ids per waypoint
    std::vector<std::vector<GraphEdge>> out;   // adjacency per node id

    int node_count() const { return static_cast<int>(nodes.size()); }
};

// Per-waypoint planning inputs beyond the toolpath itself.
struct ColumnSpec {
    std::optional<VariantSet> variants;       // replaces the waypoint's own orientation
    std::optional<Branch> branch_constraint;  // keep only this IK branch
};

double edge_weight(const IkSolution& a, const IkSolution& b);

// One column per waypoint: both IK branches of its (possibly processed)
// orientation, or 2k nodes when a variant set is attached.
Graph build_graph(const Toolpath& tp, const std::vector<ColumnSpec>& specs,
                  const MachineConfig& cfg);

// Remove edges whose two-pose swept hull hits the scene. Returns the column
// indices i whose edge set to column i+1 became empty (mandatory breaks).
std::vector<int> prune_edges(Graph& g, const Toolpath& tp, const CollisionScene& scene,
                             const HeadHull& hull);

struct TrajectoryNode {
    int waypoint_index = 0;
    IkSolution sol;      // c_deg unwrapped after finalize
    Orientation n;
    Vec3 p_wcs;
    Vec3 xyz;            // machine linear axes, set by finalize
    double thickness = 0, width = 0;
};

struct TrajectorySegment {
    double delta_e = 0;      // mm^3
    double feed = 0;         // commanded tip speed, mm/s
    double v_achievable = 0; // axis-limited tip speed, mm/s
    SpeedWindow window;
    bool is_break = false;   // travel move, no extrusion
};

struct Trajectory {
    std::vector<TrajectoryNode> nodes;
    std::vector<TrajectorySegment> segments;  // nodes.size() - 1 entries
    std::vector<int> breaks;                  // segment indices marked as breaks
    double cost = 0;                          // J, degrees
};

// Minimum-J node choice per column via Dijkstra over a virtual source/sink;
// ties break toward lower node ids. Throws NoPath when disconnected.
// A column sub-range [first_col, last_col] can be planned on its own.
Trajectory shortest_trajectory(const Graph& g, const Toolpath& tp, int first_col = 0,
                               int last_col = -1);

// Fill machine XYZ, unwrap C along the path, compute per-segment extrusion
// and feedrate, and insert breaks where the wound C step exceeds the limit.
void finalize(Trajectory& traj, const MachineConfig& cfg, const ExtrusionParams& params,
              double delta_c_max);

}  // namespace maam

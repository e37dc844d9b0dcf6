#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "maam/emitter.hpp"
#include "maam/planner.hpp"
#include "maam/singularity.hpp"

namespace maam {

struct RunConfig {
    MachineConfig machine;
    ExtrusionParams extrusion;
    double beta_deg = 45.0;
    int sample_count = 16;
    double lambda = 0.5;
    int iterations = 10;
    double resample_cap_deg = 10.0;  // cap for post-singularity resampling
    double delta_c_max = 45.0;
    uint64_t rng_seed = 1;
    double platform_z = 0.0;
    double default_thickness = 0.2;
    double default_width = 0.4;
    bool no_singularity = false;
    bool no_variants = false;
    bool trace = false;
    bool volumetric_e = false;

    std::string toolpath_file;
    std::string hull_file;        // empty: built-in default head
    std::string layer_meshes_dir; // empty: none
    std::string out_dir = "out";

    void validate() const;
};

// `key = value` lines; `#` or `;` comments.
RunConfig load_run_config(const std::string& path);

// MAAM_<KEY> environment variables override config keys (dots -> underscores,
// upper case), e.g. MAAM_ALPHA, MAAM_MACHINE_KIND.
void apply_env_overrides(RunConfig& cfg);

// Result of planning one toolpath through Algorithm-style steps.
struct PlannedPath {
    Trajectory trajectory;
    std::vector<MotionSample> before;  // raw-IK baseline motion
    std::vector<MotionSample> after;
    std::vector<int> singular_indices; // waypoints inside the cone pre-processing
};

// Plan a single toolpath against the current scene. Appends trace lines when
// trace is non-null. Does not grow the scene.
PlannedPath plan_toolpath(const Toolpath& tp, const RunConfig& cfg, const CollisionScene& scene,
                          const HeadHull& hull, std::string* trace);

struct PipelineResult {
    int exit_code = 0;       // 0 ok, 2 parse, 3 unprintable waypoint, 4 disconnected
    std::string diagnostic;  // non-empty on failure
    std::string gcode;
    SpeedReport report;
    std::vector<PlannedPath> paths;
    std::string trace_log;
};

// Full run over all toolpaths with scene accumulation, in memory.
PipelineResult plan_all(std::vector<Toolpath> paths, const RunConfig& cfg, const HeadHull& hull,
                        CollisionScene scene);

// File-level driver: load inputs, plan, write gcode/report/csv (and trace.log
// when enabled) into cfg.out_dir.
PipelineResult run_pipeline(const RunConfig& cfg);

}  // namespace maam

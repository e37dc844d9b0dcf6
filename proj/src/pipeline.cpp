#include "maam/pipeline.hpp"

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace fs = std::filesystem;

namespace maam {

void RunConfig::validate() const {
    machine.validate();
    extrusion.validate();
    if (!(beta_deg > 0 && beta_deg < 90)) throw InvariantError("beta must be in (0, 90)");
    if (sample_count <= 0) throw InvariantError("sample_count must be positive");
    if (!(lambda > 0 && lambda <= 1)) throw InvariantError("lambda must be in (0, 1]");
    if (iterations < 0) throw InvariantError("iterations must be non-negative");
    if (!(delta_c_max > 0)) throw InvariantError("delta_c_max must be positive");
    if (default_thickness <= 0 || default_width <= 0)
        throw InvariantError("default thickness/width must be positive");
}

namespace {

std::string trim(const std::string& s) {
    size_t a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    size_t b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

bool parse_bool(const std::string& v) {
    return v == "1" || v == "true" || v == "yes" || v == "on";
}

void apply_key(RunConfig& cfg, const std::string& key, const std::string& value) {
    auto d = [&] { return std::stod(value); };
    auto i = [&] { return std::stoi(value); };
    if (key == "machine.kind") {
        if (value == "I" || value == "1") cfg.machine.kind = ConfigKind::ConfigI;
        else if (value == "II" || value == "2") cfg.machine.kind = ConfigKind::ConfigII;
        else if (value == "III" || value == "3") cfg.machine.kind = ConfigKind::ConfigIII;
        else throw InvariantError("machine.kind must be I, II or III");
    } else if (key == "machine.rotary") {
        if (value == "BC") cfg.machine.rotary = RotaryLayout::BC;
        else if (value == "AC") cfg.machine.rotary = RotaryLayout::AC;
        else throw InvariantError("machine.rotary must be BC or AC");
    } else if (key == "machine.d") cfg.machine.d = d();
    else if (key == "machine.h") cfg.machine.h = d();
    else if (key == "machine.r") cfg.machine.r = d();
    else if (key == "machine.max_speed_x") cfg.machine.max_axis_speed.x = d();
    else if (key == "machine.max_speed_y") cfg.machine.max_axis_speed.y = d();
    else if (key == "machine.max_speed_z") cfg.machine.max_axis_speed.z = d();
    else if (key == "machine.max_speed_rot1") cfg.machine.max_axis_speed.rot1 = d();
    else if (key == "machine.max_speed_c") cfg.machine.max_axis_speed.c = d();
    else if (key == "machine.max_tip_speed") cfg.machine.max_tip_speed = d();
    else if (key == "alpha") cfg.machine.alpha_deg = d();
    else if (key == "beta") cfg.beta_deg = d();
    else if (key == "sample_count") cfg.sample_count = i();
    else if (key == "lambda") cfg.lambda = d();
    else if (key == "iterations") cfg.iterations = i();
    else if (key == "resample_cap") cfg.resample_cap_deg = d();
    else if (key == "delta_c_max") cfg.delta_c_max = d();
    else if (key == "rng_seed") cfg.rng_seed = std::stoull(value);
    else if (key == "platform_z") cfg.platform_z = d();
    else if (key == "default_thickness") cfg.default_thickness = d();
    else if (key == "default_width") cfg.default_width = d();
    else if (key == "k") cfg.extrusion.k = d();
    else if (key == "f_min") cfg.extrusion.f_min = d();
    else if (key == "f_max") cfg.extrusion.f_max = d();
    else if (key == "sample_time") cfg.extrusion.sample_time = d();
    else if (key == "filament_diameter") cfg.extrusion.filament_diameter = d();
    else if (key == "volumetric_e") cfg.volumetric_e = parse_bool(value);
    else if (key == "no_singularity") cfg.no_singularity = parse_bool(value);
    else if (key == "no_variants") cfg.no_variants = parse_bool(value);
    else if (key == "toolpath") cfg.toolpath_file = value;
    else if (key == "hull") cfg.hull_file = value;
    else if (key == "layer_meshes_dir") cfg.layer_meshes_dir = value;
    else if (key == "out_dir") cfg.out_dir = value;
    else throw InvariantError("unknown config key: " + key);
}

const char* kConfigKeys[] = {
    "machine.kind", "machine.rotary", "machine.d", "machine.h", "machine.r",
    "machine.max_speed_x", "machine.max_speed_y", "machine.max_speed_z",
    "machine.max_speed_rot1", "machine.max_speed_c", "machine.max_tip_speed",
    "alpha", "beta", "sample_count", "lambda", "iterations", "resample_cap",
    "delta_c_max", "rng_seed", "platform_z", "default_thickness", "default_width",
    "k", "f_min", "f_max", "sample_time", "filament_diameter", "volumetric_e",
    "no_singularity", "no_variants", "toolpath", "hull", "layer_meshes_dir", "out_dir"};

uint64_t mix_seed(uint64_t seed, uint64_t a, uint64_t b) {
    uint64_t x = seed ^ (a * 0x9e3779b97f4a7c15ULL) ^ (b * 0xc2b2ae3d27d4eb4fULL);
    x ^= x >> 33;
    x *= 0xff51afd7ed558ccdULL;
    x ^= x >> 33;
    return x;
}

}  // namespace

RunConfig load_run_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open config file: " + path);
    RunConfig cfg;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::string s = trim(line);
        if (s.empty() || s[0] == '#' || s[0] == ';') continue;
        auto eq = s.find('=');
        if (eq == std::string::npos) throw ParseError(line_no, "expected `key = value`");
        const std::string key = trim(s.substr(0, eq));
        const std::string value = trim(s.substr(eq + 1));
        try {
            apply_key(cfg, key, value);
        } catch (const InvariantError&) {
            throw;
        } catch (const std::exception&) {
            throw ParseError(line_no, "bad value for " + key);
        }
    }
    return cfg;
}

void apply_env_overrides(RunConfig& cfg) {
    for (const char* key : kConfigKeys) {
        std::string env = "MAAM_";
        for (const char* p = key; *p; ++p)
            env += *p == '.' ? '_' : static_cast<char>(std::toupper(*p));
        if (const char* v = std::getenv(env.c_str())) apply_key(cfg, key, v);
    }
}

PlannedPath plan_toolpath(const Toolpath& tp_in, const RunConfig& cfg,
                          const CollisionScene& scene, const HeadHull& hull,
                          std::string* trace) {
    auto tr = [&](const std::string& s) {
        if (trace) {
            *trace += s;
            *trace += '\n';
        }
    };
    PlannedPath out;

    tr("smooth-orientations path=" + std::to_string(tp_in.path_id));
    Toolpath tp = smooth_orientations(tp_in, cfg.lambda, cfg.iterations);
    tp = densify(tp, cfg.extrusion, cfg.machine);

    tr("singular-check");
    const double alpha = cfg.machine.alpha_deg;
    const std::vector<SingularSegment> segments = find_segments(tp, alpha);
    for (const SingularSegment& seg : segments)
        for (int i = seg.first; i <= seg.last; ++i) out.singular_indices.push_back(i);

    tr("initial-ik");
    out.before = baseline_motion(tp, cfg.machine, cfg.extrusion);

    std::vector<ColumnSpec> specs(tp.waypoints.size());
    if (!cfg.no_singularity) {
        for (const SingularSegment& seg : segments) {
            tr("process-segment first=" + std::to_string(seg.first) +
               " last=" + std::to_string(seg.last));
            const ProcessedSegment proc = process_segment(seg, tp, alpha, cfg.machine);
            for (int i = seg.first; i <= seg.last; ++i) {
                tp.waypoints[i].n = proc.orientations[i - seg.first];
                tp.waypoints[i].status = WaypointStatus::SingularProcessed;
            }
            if (proc.anchor_end_branch)
                specs[*seg.anchor_end].branch_constraint = proc.anchor_end_branch;
        }
    }

    tr("collision-check");
    for (size_t i = 0; i < tp.waypoints.size(); ++i) {
        Waypoint& w = tp.waypoints[i];
        if (gamma(w.p, w.n, scene, hull) == 0) continue;
        if (cfg.no_variants) continue;  // baseline: leave the collided pose in place
        tr("generate-variants i=" + std::to_string(i));
        const bool post_singular = w.status == WaypointStatus::SingularProcessed;
        const double cap = post_singular ? cfg.resample_cap_deg : cfg.beta_deg;
        try {
            specs[i].variants = sample_variants(
                w, scene, hull, cap, cfg.sample_count, !post_singular, alpha,
                mix_seed(cfg.rng_seed, static_cast<uint64_t>(tp.path_id), i));
        } catch (const NoFeasibleOrientation&) {
            throw NoFeasibleOrientation(static_cast<int>(i));
        }
        w.status = WaypointStatus::VariantSet;
    }

    tr("construct-graph");
    Graph g = build_graph(tp, specs, cfg.machine);
    const std::vector<int> cuts = prune_edges(g, tp, scene, hull);

    tr("dijkstra");
    Trajectory traj;
    std::vector<int> chunk_breaks;
    int start = 0;
    auto append = [&](int first, int last) {
        Trajectory part = shortest_trajectory(g, tp, first, last);
        if (!traj.nodes.empty()) chunk_breaks.push_back(static_cast<int>(traj.nodes.size()) - 1);
        traj.cost += part.cost;
        traj.nodes.insert(traj.nodes.end(), part.nodes.begin(), part.nodes.end());
    };
    for (int cut : cuts) {
        append(start, cut);
        start = cut + 1;
    }
    append(start, static_cast<int>(g.columns.size()) - 1);

    tr("linear-ik");
    finalize(traj, cfg.machine, cfg.extrusion, cfg.delta_c_max);
    for (int b : chunk_breaks) {
        if (!traj.segments[b].is_break) {
            traj.segments[b].is_break = true;
            traj.breaks.push_back(b);
        }
    }
    std::sort(traj.breaks.begin(), traj.breaks.end());
    traj.breaks.erase(std::unique(traj.breaks.begin(), traj.breaks.end()), traj.breaks.end());

    out.trajectory = std::move(traj);
    out.after = trajectory_motion(out.trajectory, cfg.machine, cfg.extrusion);
    return out;
}

PipelineResult plan_all(std::vector<Toolpath> paths, const RunConfig& cfg, const HeadHull& hull,
                        CollisionScene scene) {
    PipelineResult result;
    std::string* trace = cfg.trace ? &result.trace_log : nullptr;
    std::vector<std::vector<MotionSample>> before, after;
    std::vector<Trajectory> trajs;
    try {
        for (const Toolpath& tp : paths) {
            PlannedPath planned = plan_toolpath(tp, cfg, scene, hull, trace);
            before.push_back(planned.before);
            after.push_back(planned.after);
            trajs.push_back(planned.trajectory);
            // the just-printed path becomes an obstacle for the next one
            for (const TrajectoryNode& n : planned.trajectory.nodes) scene.beads.insert(n.p_wcs);
            result.paths.push_back(std::move(planned));
        }
    } catch (const NoFeasibleOrientation& e) {
        result.exit_code = 3;
        result.diagnostic = e.what();
        return result;
    } catch (const EmptyColumn& e) {
        result.exit_code = 4;
        result.diagnostic = e.what();
        return result;
    } catch (const NoPath& e) {
        result.exit_code = 4;
        result.diagnostic = e.what();
        return result;
    }
    result.report = emit_report(before, after);
    EmitOptions opts;
    opts.volumetric_e = cfg.volumetric_e;
    opts.filament_diameter = cfg.extrusion.filament_diameter;
    result.gcode = emit_gcode(trajs, cfg.machine, opts);
    return result;
}

PipelineResult run_pipeline(const RunConfig& cfg) {
    PipelineResult result;
    cfg.validate();

    std::vector<Toolpath> paths;
    try {
        std::ifstream in(cfg.toolpath_file);
        if (!in) throw Error("cannot open toolpath file: " + cfg.toolpath_file);
        paths = load_toolpaths(in, {cfg.default_thickness, cfg.default_width});
    } catch (const ParseError& e) {
        result.exit_code = 2;
        result.diagnostic = e.what();
        return result;
    } catch (const Error& e) {
        result.exit_code = 2;
        result.diagnostic = e.what();
        return result;
    }

    HeadHull hull = cfg.hull_file.empty() ? HeadHull::default_head()
                                          : HeadHull::from_mesh(load_mesh(cfg.hull_file));
    CollisionScene scene;
    scene.platform_z = cfg.platform_z;
    scene.beads.set_radius(std::max(cfg.default_width, cfg.default_thickness) / 2.0);
    if (!cfg.layer_meshes_dir.empty()) {
        std::vector<std::string> files;
        for (const auto& e : fs::directory_iterator(cfg.layer_meshes_dir)) {
            const std::string ext = e.path().extension().string();
            if (ext == ".obj" || ext == ".off") files.push_back(e.path().string());
        }
        std::sort(files.begin(), files.end());
        for (const std::string& f : files) scene.layer_meshes.push_back(load_mesh(f));
    }

    PipelineResult planned = plan_all(std::move(paths), cfg, hull, std::move(scene));
    if (planned.exit_code != 0) return planned;

    fs::create_directories(cfg.out_dir);
    auto write = [&](const std::string& name, const std::string& content) {
        std::ofstream out(fs::path(cfg.out_dir) / name, std::ios::binary);
        out << content;
    };
    write("toolpath.gcode", planned.gcode);
    write("report.txt", report_text(planned.report));
    write("report.csv", report_csv(planned.report));
    if (cfg.trace) write("trace.log", planned.trace_log);
    return planned;
}

}  // namespace maam

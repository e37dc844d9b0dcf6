#include <cstdio>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "maam/pipeline.hpp"

int main(int argc, char** argv) {
    CLI::App app{"Singularity-aware motion planner for multi-axis additive manufacturing"};
    app.require_subcommand(1);

    CLI::App* plan = app.add_subcommand("plan", "Plan a toolpath file and emit G-code");
    std::string config_path;
    std::string out_dir;
    bool trace = false, no_singularity = false, no_variants = false;
    long long seed = -1;
    plan->add_option("--config", config_path, "run configuration file")->required();
    plan->add_flag("--trace", trace, "write a step-by-step trace log");
    plan->add_flag("--no-singularity", no_singularity, "skip singular-region processing");
    plan->add_flag("--no-variants", no_variants, "skip collision-variant sampling");
    plan->add_option("--seed", seed, "override the RNG seed");
    plan->add_option("--out", out_dir, "override the output directory");

    CLI11_PARSE(app, argc, argv);

    try {
        maam::RunConfig cfg = maam::load_run_config(config_path);
        maam::apply_env_overrides(cfg);
        if (trace) cfg.trace = true;
        if (no_singularity) cfg.no_singularity = true;
        if (no_variants) cfg.no_variants = true;
        if (seed >= 0) cfg.rng_seed = static_cast<uint64_t>(seed);
        if (!out_dir.empty()) cfg.out_dir = out_dir;

        maam::PipelineResult result = maam::run_pipeline(cfg);
        if (result.exit_code != 0) {
            std::cerr << "error: " << result.diagnostic << "\n";
            return result.exit_code;
        }
        std::cerr << "wrote " << cfg.out_dir << "/toolpath.gcode ("
                  << result.report.after.total << " segments, violations "
                  << result.report.before.violation_fraction << "% -> "
                  << result.report.after.violation_fraction << "%)\n";
        return 0;
    } catch (const maam::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}

// sectorplan: scenario generation, single-shot planning, paired benchmark
// campaigns, and SVG rendering for the two-stage sector-directed planner.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "sectorplan/ad_rrt_star.hpp"
#include "sectorplan/bench.hpp"
#include "sectorplan/errors.hpp"
#include "sectorplan/planner_core.hpp"
#include "sectorplan/render.hpp"
#include "sectorplan/result_io.hpp"
#include "sectorplan/world.hpp"

namespace sp = sectorplan;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;  // I/O, parse, validation, generation
constexpr int kExitUsage = 2;    // flag errors
constexpr int kExitNoPath = 3;   // planning finished without reaching the goal

constexpr double kDegToRad = sp::kPi / 180.0;

struct PlannerFlags {
    int iterations = 5000;
    double step = 30.0;
    double gamma = -1.0;         // <0: derive from the map diagonal
    double radius_floor = -1.0;  // <0: 2 * step
    double goal_radius = 25.0;
    double goal_bias = 0.05;
    double cell_size = 20.0;
    double expansion_factor = 10.0;
    double initial_angle_deg = 0.0;
    double increment_deg = 15.0;
    double max_half_angle_deg = 180.0;
    int stall_iterations = 200;
    double reach_distance = -1.0;  // <0: 1.5 * step
    bool no_advance = false;
    bool no_shortcut = false;
};

void add_planner_flags(CLI::App* cmd, PlannerFlags& f) {
    cmd->add_option("--iterations,-n", f.iterations, "Planner iterations N");
    cmd->add_option("--step", f.step, "Steer increment (map units)");
    cmd->add_option("--gamma", f.gamma, "Near-radius gamma (default: 2*diagonal/sqrt(pi))");
    cmd->add_option("--radius-floor", f.radius_floor, "Near-radius floor (default: 2*step)");
    cmd->add_option("--goal-radius", f.goal_radius, "Goal region radius");
    cmd->add_option("--goal-bias", f.goal_bias, "Baseline goal-bias probability");
    cmd->add_option("--cell-size", f.cell_size, "Global grid cell size");
    cmd->add_option("--expansion-factor", f.expansion_factor, "m in D_scale = map extent / m");
    cmd->add_option("--initial-angle-deg", f.initial_angle_deg, "Initial sector half-angle (deg)");
    cmd->add_option("--angle-increment-deg", f.increment_deg, "Half-angle widening step (deg)");
    cmd->add_option("--max-half-angle-deg", f.max_half_angle_deg, "Half-angle cap (deg)");
    cmd->add_option("--stall-iterations", f.stall_iterations,
                    "Iterations without progress before widening");
    cmd->add_option("--reach-distance", f.reach_distance,
                    "Waypoint reach distance (default: 1.5*step)");
    cmd->add_flag("--no-advance", f.no_advance, "Disable anchor advancement");
    cmd->add_flag("--no-shortcut", f.no_shortcut, "Disable path shortcutting");
}

sp::PlannerConfig to_base_config(const PlannerFlags& f, uint64_t seed) {
    sp::PlannerConfig cfg;
    cfg.max_iterations = f.iterations;
    cfg.step = f.step;
    if (f.gamma >= 0.0) cfg.gamma = f.gamma;
    if (f.radius_floor >= 0.0) cfg.radius_floor = f.radius_floor;
    cfg.goal_radius = f.goal_radius;
    cfg.goal_bias = f.goal_bias;
    cfg.seed = seed;
    return cfg;
}

sp::AdPlannerConfig to_ad_config(const PlannerFlags& f, uint64_t seed) {
    sp::AdPlannerConfig cfg;
    cfg.base = to_base_config(f, seed);
    cfg.cell_size = f.cell_size;
    cfg.expansion_factor = f.expansion_factor;
    cfg.schedule.initial_half_angle = f.initial_angle_deg * kDegToRad;
    cfg.schedule.increment = f.increment_deg * kDegToRad;
    cfg.schedule.max_half_angle = f.max_half_angle_deg * kDegToRad;
    cfg.schedule.stall_iterations = f.stall_iterations;
    if (f.reach_distance >= 0.0) cfg.reach_distance = f.reach_distance;
    cfg.advance_enabled = !f.no_advance;
    cfg.shortcut = !f.no_shortcut;
    return cfg;
}

void print_metrics_line(const sp::PlanResult& r, const std::string& out_path) {
    std::cout << "planner=" << r.planner << " kind=" << r.scenario_kind
              << " obstacles=" << r.obstacle_count << " seed=" << r.seed
              << " success=" << (r.success ? "true" : "false") << " nodes=" << r.node_count;
    char buf[64];
    if (r.total_path_cost) {
        std::snprintf(buf, sizeof(buf), "%.6f", *r.total_path_cost);
        std::cout << " total_cost=" << buf;
        std::snprintf(buf, sizeof(buf), "%.6f", *r.average_path_cost);
        std::cout << " avg_cost=" << buf;
    }
    std::snprintf(buf, sizeof(buf), "%.4f", r.elapsed_seconds);
    std::cout << " elapsed_s=" << buf << " out=" << out_path << "\n";
}

std::string with_suffix(const std::string& path, const std::string& suffix) {
    const auto dot = path.rfind('.');
    const auto slash = path.rfind('/');
    if (dot == std::string::npos || (slash != std::string::npos && dot < slash))
        return path + "." + suffix;
    return path.substr(0, dot) + "." + suffix + path.substr(dot);
}

void write_text(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open " + path);
    out << text;
    if (!out) throw std::runtime_error("write failed for " + path);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"sectorplan: two-stage 2D path-planning benchmark toolkit"};
    app.require_subcommand(1);

    // gen-scenario
    auto* gen = app.add_subcommand("gen-scenario", "Generate a scenario file");
    std::string gen_kind;
    uint64_t gen_seed = 0;
    std::string gen_out;
    sp::ScenarioParams gen_params;
    int gen_count = 0;
    gen->add_option("--kind", gen_kind, "Scenario kind S1..S6")->required();
    gen->add_option("--seed", gen_seed, "Generation seed");
    gen->add_option("--out", gen_out, "Output scenario file")->required();
    gen->add_option("--width", gen_params.width, "Map width");
    gen->add_option("--height", gen_params.height, "Map height");
    gen->add_option("--obstacle-radius", gen_params.obstacle_radius, "Obstacle disc radius");
    gen->add_option("--count", gen_count, "Override obstacle count (marks the scenario Custom)");

    // plan
    auto* plan = app.add_subcommand("plan", "Plan on a scenario file");
    std::string plan_scenario, plan_planner = "ad-rrt-star", plan_out = "result.json", plan_svg;
    uint64_t plan_seed = 0;
    PlannerFlags plan_flags;
    plan->add_option("--scenario", plan_scenario, "Scenario file")->required();
    plan->add_option("--planner", plan_planner, "rrt-star | ad-rrt-star | both");
    plan->add_option("--seed", plan_seed, "Planner RNG seed");
    plan->add_option("--out", plan_out, "Result file (both: suffixed per planner)");
    plan->add_option("--svg", plan_svg, "Also render an SVG to this path");
    add_planner_flags(plan, plan_flags);

    // bench
    auto* bench = app.add_subcommand("bench", "Run a paired benchmark campaign");
    std::string bench_cells = "S1,S2,S3,S4,S5,S6";
    int bench_trials = 20;
    uint64_t bench_base_seed = 0;
    std::string bench_out;
    int bench_threads = 0;
    sp::ScenarioParams bench_params;
    PlannerFlags bench_flags;
    bench->add_option("--cells", bench_cells, "Comma-separated kinds, optionally KIND:COUNT");
    bench->add_option("--trials", bench_trials, "Trials per cell")->check(CLI::PositiveNumber);
    bench->add_option("--base-seed", bench_base_seed, "Seed for trial 0; trial t uses base+t");
    bench->add_option("--out", bench_out, "Output CSV file")->required();
    bench->add_option("--threads", bench_threads, "Worker pool size (0: auto)");
    bench->add_option("--width", bench_params.width, "Map width");
    bench->add_option("--height", bench_params.height, "Map height");
    bench->add_option("--obstacle-radius", bench_params.obstacle_radius, "Obstacle disc radius");
    add_planner_flags(bench, bench_flags);

    // render
    auto* render = app.add_subcommand("render", "Render a result file to SVG");
    std::string render_scenario, render_result, render_out;
    bool render_no_tree = false, render_no_sector = false;
    render->add_option("--scenario", render_scenario, "Scenario file")->required();
    render->add_option("--result", render_result, "Result file")->required();
    render->add_option("--out", render_out, "Output SVG file")->required();
    render->add_flag("--no-tree", render_no_tree, "Skip tree edges");
    render->add_flag("--no-sector", render_no_sector, "Skip the sector outline");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << e.what() << "\nRun with --help for usage.\n";
        return kExitUsage;
    }

    try {
        if (gen->parsed()) {
            const auto kind = sp::parse_kind(gen_kind);
            if (!kind || *kind == sp::ScenarioKind::Custom) {
                std::cerr << "gen-scenario: --kind must be one of S1..S6 (got \"" << gen_kind
                          << "\")\nRun with --help for usage.\n";
                return kExitUsage;
            }
            if (gen_count > 0) gen_params.obstacle_count = gen_count;
            const sp::Scenario s = sp::generate_scenario(*kind, gen_seed, gen_params);
            sp::save_scenario(s, gen_out);
            std::cout << "kind=" << sp::to_string(s.kind) << " obstacles=" << s.obstacles.size()
                      << " seed=" << s.seed << " out=" << gen_out << "\n";
            return kExitOk;
        }

        if (plan->parsed()) {
            if (plan_planner != "rrt-star" && plan_planner != "ad-rrt-star" &&
                plan_planner != "both") {
                std::cerr << "plan: --planner must be rrt-star, ad-rrt-star, or both\n"
                             "Run with --help for usage.\n";
                return kExitUsage;
            }
            const sp::Scenario s = sp::load_scenario(plan_scenario);
            const bool run_base = plan_planner != "ad-rrt-star";
            const bool run_ad = plan_planner != "rrt-star";
            const bool both = run_base && run_ad;
            bool all_found = true;

            auto finish = [&](const sp::PlanResult& r, const std::string& suffix) {
                const std::string out_path = both ? with_suffix(plan_out, suffix) : plan_out;
                sp::save_result(r, out_path);
                if (!plan_svg.empty()) {
                    const std::string svg_path = both ? with_suffix(plan_svg, suffix) : plan_svg;
                    write_text(svg_path, sp::render_svg(r, s));
                }
                print_metrics_line(r, out_path);
                all_found = all_found && r.success;
            };
            if (run_base) finish(sp::plan_rrt_star(s, to_base_config(plan_flags, plan_seed)),
                                 "rrt_star");
            if (run_ad) finish(sp::plan_ad_rrt_star(s, to_ad_config(plan_flags, plan_seed)),
                               "ad_rrt_star");
            return all_found ? kExitOk : kExitNoPath;
        }

        if (bench->parsed()) {
            sp::CampaignSpec spec;
            std::stringstream tokens(bench_cells);
            std::string token;
            while (std::getline(tokens, token, ',')) {
                const auto cell = sp::parse_cell(token);
                if (!cell) {
                    std::cerr << "bench: bad cell token \"" << token
                              << "\" (expected KIND or KIND:COUNT)\nRun with --help for usage.\n";
                    return kExitUsage;
                }
                spec.cells.push_back(*cell);
            }
            spec.trials = bench_trials;
            spec.base_seed = bench_base_seed;
            spec.scenario_params = bench_params;
            spec.planner = to_base_config(bench_flags, bench_base_seed);
            spec.ad = to_ad_config(bench_flags, bench_base_seed);
            spec.threads = bench_threads;
            const sp::CampaignResult result = sp::run_campaign(spec);
            sp::write_csv(result.rows, bench_out);
            std::cout << result.summary;
            std::cout << "rows=" << result.rows.size() << " out=" << bench_out << "\n";
            return kExitOk;
        }

        if (render->parsed()) {
            const sp::Scenario s = sp::load_scenario(render_scenario);
            const sp::PlanResult r = sp::load_result(render_result);
            sp::RenderOptions opts;
            opts.draw_tree = !render_no_tree;
            opts.draw_sector = !render_no_sector;
            write_text(render_out, sp::render_svg(r, s, opts));
            std::cout << "out=" << render_out << "\n";
            return kExitOk;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitFailure;
    }
    return kExitUsage;
}

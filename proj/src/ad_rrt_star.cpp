#include "sectorplan/ad_rrt_star.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <sstream>

#include "sectorplan/errors.hpp"

namespace sectorplan {

double expansion_scale(double map_extent, double m) {
    if (!(map_extent > 0.0)) throw std::invalid_argument("expansion_scale: map_extent must be > 0");
    if (!(m > 0.0)) throw std::invalid_argument("expansion_scale: expansion factor must be > 0");
    return map_extent / m;
}

namespace {

// First waypoint after anchor_idx lying beyond reach_distance; the final
// waypoint (the destination) when none qualifies.
int pick_target(const GlobalPath& gpath, const Point2& anchor, int anchor_idx, double reach) {
    const int last = int(gpath.waypoints.size()) - 1;
    for (int j = anchor_idx + 1; j <= last; ++j)
        if (euclidean_distance(anchor, gpath.waypoints[size_t(j)]) > reach) return j;
    return last;
}

}  // namespace

ConnectivityRegion build_region(const Point2& anchor, const GlobalPath& gpath, int anchor_idx,
                                double half_angle, const RegionParams& params) {
    ConnectivityRegion region;
    region.anchor_waypoint_index = anchor_idx;
    region.expansion_scale = params.d_scale;
    region.target_waypoint_index = pick_target(gpath, anchor, anchor_idx, params.reach_distance);
    const Point2& target = gpath.waypoints[size_t(region.target_waypoint_index)];
    const double heading = (anchor == target) ? 0.0 : angle_of(anchor, target);
    const double length = std::max(params.d_scale, euclidean_distance(anchor, target) + params.step);
    region.sector = Sector(anchor, heading, half_angle, length);
    return region;
}

Point2 bounded_sample(const ConnectivityRegion& region, const Scenario& s, Rng& rng) {
    return sample_in_sector(region.sector, s, rng);
}

bool should_widen(int iterations_since_progress, const AngleSchedule& sched) {
    return iterations_since_progress >= sched.stall_iterations;
}

std::optional<ConnectivityRegion> advance_anchor(const Tree& t, const GlobalPath& gpath,
                                                 const ConnectivityRegion& current,
                                                 const AdvanceRule& rule,
                                                 const RegionParams& params,
                                                 double initial_half_angle) {
    const Point2& target = gpath.waypoints[size_t(current.target_waypoint_index)];
    const int v = t.nearest(target);
    if (euclidean_distance(t.vertex(v).position, target) > rule.reach_distance)
        return std::nullopt;
    const Point2 new_anchor = t.vertex(v).position;
    // once the destination waypoint is the anchor, re-advancing onto the
    // same apex would only churn the angle reset
    if (current.target_waypoint_index == current.anchor_waypoint_index &&
        new_anchor == current.sector.apex)
        return std::nullopt;
    return build_region(new_anchor, gpath, current.target_waypoint_index, initial_half_angle,
                        params);
}

Path prune_path(const Tree& t, int best_goal_vertex, const Scenario& s, bool shortcut) {
    std::vector<Point2> raw;
    for (int v = best_goal_vertex; v != -1; v = t.vertex(v).parent)
        raw.push_back(t.vertex(v).position);
    std::reverse(raw.begin(), raw.end());
    if (!shortcut || raw.size() <= 2) return make_path(std::move(raw));

    std::vector<Point2> out;
    out.push_back(raw.front());
    size_t i = 0;
    while (i + 1 < raw.size()) {
        size_t j = raw.size() - 1;
        while (j > i + 1 && !edge_is_free(raw[i], raw[j], s)) --j;
        out.push_back(raw[j]);
        i = j;
    }
    return make_path(std::move(out));
}

namespace {

std::string ad_config_echo(const AdPlannerConfig& cfg, const NearParams& np, double reach,
                           double d_scale) {
    std::ostringstream out;
    char buf[64];
    auto real = [&](double v) {
        std::snprintf(buf, sizeof(buf), "%.17g", v);
        return std::string(buf);
    };
    out << "planner=ad_rrt_star\n";
    out << "max_iterations=" << cfg.base.max_iterations << "\n";
    out << "step=" << real(cfg.base.step) << "\n";
    out << "gamma=" << real(np.gamma) << "\n";
    out << "dim=" << np.dim << "\n";
    out << "radius_floor=" << real(np.radius_floor) << "\n";
    out << "goal_radius=" << real(cfg.base.goal_radius) << "\n";
    out << "seed=" << cfg.base.seed << "\n";
    out << "cell_size=" << real(cfg.cell_size) << "\n";
    out << "expansion_factor=" << real(cfg.expansion_factor) << "\n";
    out << "d_scale=" << real(d_scale) << "\n";
    out << "initial_half_angle=" << real(cfg.schedule.initial_half_angle) << "\n";
    out << "angle_increment=" << real(cfg.schedule.increment) << "\n";
    out << "max_half_angle=" << real(cfg.schedule.max_half_angle) << "\n";
    out << "stall_iterations=" << cfg.schedule.stall_iterations << "\n";
    out << "reach_distance=" << real(reach) << "\n";
    out << "advance_enabled=" << (cfg.advance_enabled ? 1 : 0) << "\n";
    out << "shortcut=" << (cfg.shortcut ? 1 : 0) << "\n";
    return out.str();
}

}  // namespace

PlanResult plan_ad_rrt_star(const Scenario& s, const AdPlannerConfig& cfg) {
    const NearParams np = resolve_near_params(cfg.base, s);
    const double reach = cfg.reach_distance.value_or(1.5 * cfg.base.step);
    const double d_scale = expansion_scale(std::max(s.width, s.height), cfg.expansion_factor);
    const RegionParams rp{d_scale, cfg.base.step, reach};

    PlanResult result;
    result.planner = "ad_rrt_star";
    result.rng_algorithm = Rng::algorithm_id();
    result.seed = cfg.base.seed;
    result.scenario_digest = scenario_digest(s);
    result.scenario_kind = to_string(s.kind);
    result.obstacle_count = int(s.obstacles.size());
    result.map_width = s.width;
    result.map_height = s.height;
    result.config_echo = ad_config_echo(cfg, np, reach, d_scale);

    // global stage; an unroutable grid degrades to a straight pseudo-path
    GlobalPath gpath;
    try {
        gpath = plan_global(s, cfg.cell_size);
    } catch (const NoGlobalPath&) {
        gpath.waypoints = {s.source, s.destination};
        gpath.grid_cost = euclidean_distance(s.source, s.destination);
    } catch (const SourceBlocked&) {
        gpath.waypoints = {s.source, s.destination};
        gpath.grid_cost = euclidean_distance(s.source, s.destination);
    } catch (const DestinationBlocked&) {
        gpath.waypoints = {s.source, s.destination};
        gpath.grid_cost = euclidean_distance(s.source, s.destination);
    }

    Rng rng(cfg.base.seed);
    Tree tree = initialize_tree(s.source, s.width, s.height);
    GoalTracker goal(s.destination, cfg.base.goal_radius);

    double half_angle = cfg.schedule.initial_half_angle;
    ConnectivityRegion region = build_region(s.source, gpath, 0, half_angle, rp);
    int stall = 0;
    double best_progress = std::numeric_limits<double>::infinity();

    auto widen = [&] {
        half_angle = std::min(half_angle + cfg.schedule.increment, cfg.schedule.max_half_angle);
        region = build_region(region.sector.apex, gpath, region.anchor_waypoint_index, half_angle,
                              rp);
        stall = 0;
    };

    const auto t0 = std::chrono::steady_clock::now();
    for (int iter = 0; iter < cfg.base.max_iterations; ++iter) {
        Point2 z_rand;
        try {
            z_rand = bounded_sample(region, s, rng);
        } catch (const SamplingExhausted&) {
            widen();
            continue;
        }
        const int inserted = extend_tree(tree, z_rand, s, cfg.base.step, np);
        goal.observe(tree, inserted, iter);
        if (inserted >= 0 && cfg.audit) cfg.audit->push_back({iter, region.sector, z_rand});

        // progress = a vertex strictly closer to the current target waypoint
        // than any inserted earlier this phase
        bool progressed = false;
        if (inserted >= 0) {
            const double d = euclidean_distance(
                tree.vertex(inserted).position,
                gpath.waypoints[size_t(region.target_waypoint_index)]);
            if (d < best_progress) {
                best_progress = d;
                progressed = true;
            }
        }
        stall = progressed ? 0 : stall + 1;

        if (cfg.advance_enabled) {
            const auto advanced = advance_anchor(tree, gpath, region, {reach}, rp,
                                                 cfg.schedule.initial_half_angle);
            if (advanced) {
                region = *advanced;
                half_angle = cfg.schedule.initial_half_angle;
                stall = 0;
                best_progress = std::numeric_limits<double>::infinity();
            }
        }
        if (should_widen(stall, cfg.schedule)) widen();
    }
    const auto t1 = std::chrono::steady_clock::now();

    result.node_count = tree.size();
    result.elapsed_seconds = std::chrono::duration<double>(t1 - t0).count();
    result.success = goal.reached();
    result.best_cost_trace = goal.trace();
    result.final_sector = region.sector;
    if (result.success) {
        Path path = prune_path(tree, goal.best_vertex(), s, cfg.shortcut);
        result.total_path_cost = path.total_cost;
        result.average_path_cost = path.total_cost / double(path.waypoints.size() - 1);
        result.path = std::move(path);
    }
    result.tree = std::move(tree);
    return result;
}

}  // namespace sectorplan

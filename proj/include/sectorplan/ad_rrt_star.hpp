#pragma once

#include <optional>
#include <vector>

#include "sectorplan/geometry.hpp"
#include "sectorplan/global_planner.hpp"
#include "sectorplan/planner_core.hpp"
#include "sectorplan/world.hpp"

namespace sectorplan {

/// Angle-bounded sampling region anchored on the global path.
struct ConnectivityRegion {
    Sector sector;
    int anchor_waypoint_index = 0;  // last global waypoint the anchor reached
    double expansion_scale = 0.0;   // floor on the sector length
    int target_waypoint_index = 0;  // global waypoint the sector aims at
};

/// Search-angle widening policy: start narrow, widen by `increment` each
/// time progress stalls for `stall_iterations` iterations, capped at
/// `max_half_angle`.
struct AngleSchedule {
    double initial_half_angle = 0.0;
    double increment = kPi / 12.0;  // 15 degrees
    double max_half_angle = kPi;
    int stall_iterations = 200;
};

/// A waypoint counts as reached when a tree vertex comes within
/// reach_distance of it; the anchor then advances and the angle resets.
struct AdvanceRule {
    double reach_distance = 45.0;
};

/// Sector construction parameters shared by build/advance.
struct RegionParams {
    double d_scale = 100.0;   // expansion distance scale
    double step = 30.0;       // planner increment, padding on the length
    double reach_distance = 45.0;
};

/// Expansion distance scale: map extent divided by the expansion factor.
double expansion_scale(double map_extent, double m);

/// Sector anchored at `anchor`, aimed at the first global waypoint past
/// anchor_idx that lies beyond reach_distance (the destination when none),
/// with length max(d_scale, distance-to-target + step).
ConnectivityRegion build_region(const Point2& anchor, const GlobalPath& gpath, int anchor_idx,
                                double half_angle, const RegionParams& params);

/// Uniform draw over (sector ∩ bounds ∩ free space); see sample_in_sector.
Point2 bounded_sample(const ConnectivityRegion& region, const Scenario& s, Rng& rng);

/// True once the stall counter reaches the schedule's threshold.
bool should_widen(int iterations_since_progress, const AngleSchedule& sched);

/// When a tree vertex is within reach of the region's target waypoint,
/// returns the advanced region: apex moved to that vertex, target bumped to
/// the next waypoint, half-angle reset to initial. Returns nullopt when
/// nothing would change.
std::optional<ConnectivityRegion> advance_anchor(const Tree& t, const GlobalPath& gpath,
                                                 const ConnectivityRegion& current,
                                                 const AdvanceRule& rule,
                                                 const RegionParams& params,
                                                 double initial_half_angle);

/// Root-to-goal extraction by parent walk, then greedy shortcutting from
/// the start while the direct edge stays collision-free. With shortcutting
/// off the raw walk is returned unchanged. Never increases cost.
Path prune_path(const Tree& t, int best_goal_vertex, const Scenario& s, bool shortcut = true);

/// Post-hoc audit record: the sector that was active when a sample was
/// accepted into the tree.
struct SampleAudit {
    int iteration = 0;
    Sector sector;
    Point2 sample;
};

struct AdPlannerConfig {
    PlannerConfig base;  // goal_bias and sample_sector are not used here
    double cell_size = 20.0;
    double expansion_factor = 10.0;  // m in D_scale = E/m
    AngleSchedule schedule;
    std::optional<double> reach_distance;  // default 1.5 * base.step
    bool advance_enabled = true;
    bool shortcut = true;
    std::vector<SampleAudit>* audit = nullptr;  // optional, test instrumentation
};

/// Two-stage planner: global grid path seeds the sector headings, then the
/// RRT* substrate grows inside the angle-bounded region, widening on stall
/// and advancing the anchor along the global path. Falls back to a straight
/// source-destination pseudo-path when the global stage finds no route.
PlanResult plan_ad_rrt_star(const Scenario& s, const AdPlannerConfig& cfg);

}  // namespace sectorplan

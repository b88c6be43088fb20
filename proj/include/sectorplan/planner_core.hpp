#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "sectorplan/geometry.hpp"
#include "sectorplan/rng.hpp"
#include "sectorplan/world.hpp"

namespace sectorplan {

/// RRT* tree: indexed vertices with parent links, cost-from-root, and a
/// uniform-grid spatial index over positions.
///
/// Invariants maintained by every mutator:
///   - vertex 0 is the unique root: no parent, cost 0,
///   - cost_from_root(v) = cost_from_root(parent) + edge length, computed
///     as that single addition so rewiring updates stay exactly monotone,
///   - parent links are acyclic and reach the root,
///   - the grid index holds exactly the vertex positions.
class Tree {
public:
    struct Vertex {
        Point2 position;
        int parent = -1;  // -1 for the root only
        double cost_from_root = 0.0;
    };

    Tree() = default;  // empty shell; real trees come from initialize_tree
    Tree(const Point2& root, double map_width, double map_height);

    int size() const { return static_cast<int>(vertices_.size()); }
    const Vertex& vertex(int i) const { return vertices_[size_t(i)]; }
    int root_index() const { return 0; }
    const std::vector<int>& children(int i) const { return children_[size_t(i)]; }

    /// Vertex minimizing euclidean_distance to q; ties break to the lowest
    /// index. Tree must be non-empty.
    int nearest(const Point2& q) const;

    /// All vertices within the closed ball of the given radius around q,
    /// ascending by index.
    std::vector<int> near(const Point2& q, double radius) const;

    /// Appends a vertex under `parent`; cost = parent cost + edge length.
    /// The caller has already verified the edge is collision-free.
    int insert_node(int parent, const Point2& pos);

    /// Reparents `vertex` under `new_parent` and recomputes the whole
    /// subtree's costs as parent cost + edge length.
    void reparent(int vertex, int new_parent);

    /// Grid-index contents, for the independent invariant checker.
    std::vector<Point2> spatial_index_points() const;

    /// Rebuilds a tree from stored positions and parent links (root at
    /// index 0); costs are recomputed from the edges.
    static Tree restore(const std::vector<std::pair<Point2, int>>& vertices, double map_width,
                        double map_height);

private:
    struct GridIndex {
        double cell_w = 1.0, cell_h = 1.0;
        int cols = 1, rows = 1;
        std::vector<std::vector<int>> buckets;
        int bucket_of(const Point2& p) const;
    };

    void recompute_subtree_costs(int v);

    std::vector<Vertex> vertices_;
    std::vector<std::vector<int>> children_;
    GridIndex grid_;
};

/// Near-neighborhood radius parameters: radius = max(floor, gamma *
/// (log(n)/n)^(1/dim)), natural log; n = 1 gives the floor.
struct NearParams {
    double gamma = 0.0;
    int dim = 2;
    double radius_floor = 0.0;
};

double near_radius(const NearParams& p, double n);

struct SteerParams {
    double step = 30.0;  // incremental distance
};

Tree initialize_tree(const Point2& src, double map_width, double map_height);

/// Truncates the move from `from` toward `toward` to at most `step`.
/// Throws ZeroVector when from == toward.
Point2 steer(const Point2& from, const Point2& toward, const SteerParams& p);

/// True iff both endpoints are inside the map and the segment clears every
/// obstacle disc. Analytic, not sampled.
bool edge_is_free(const Point2& a, const Point2& b, const Scenario& s);

/// Among candidates with a free edge to new_pos, plus the fallback, picks
/// the one minimizing cost_from_root + edge length; ties break to the
/// lowest index. The fallback edge must already be known free.
int choose_parent(const Tree& t, const std::vector<int>& candidates, int fallback,
                  const Point2& new_pos, const Scenario& s);

/// For each near vertex (excluding the new vertex and its parent): if the
/// edge from the new vertex is free and strictly cheaper, reparent it and
/// propagate costs through its subtree. Returns the number reparented.
int rewire(Tree& t, const std::vector<int>& near_list, int new_vertex, const Scenario& s);

struct PlannerConfig {
    int max_iterations = 5000;
    double step = 30.0;
    double goal_radius = 25.0;
    double goal_bias = 0.05;
    uint64_t seed = 0;
    int dim = 2;
    std::optional<double> gamma;         // default: 2 * map diagonal / sqrt(pi)
    std::optional<double> radius_floor;  // default: 2 * step
    // When set, sampling is restricted to this sector (polar, area-uniform)
    // and goal bias is not applied; used to compare the baseline against the
    // directed planner on an identical sample stream.
    std::optional<Sector> sample_sector;
};

NearParams resolve_near_params(const PlannerConfig& cfg, const Scenario& s);

struct TraceEntry {
    int iteration = 0;
    double cost = 0.0;
};

struct PlanResult {
    std::string planner;
    bool success = false;
    Tree tree;
    std::optional<Path> path;
    int node_count = 0;
    double elapsed_seconds = 0.0;
    std::optional<double> total_path_cost;
    std::optional<double> average_path_cost;
    std::vector<TraceEntry> best_cost_trace;  // strictly improving goal costs
    std::string rng_algorithm;
    uint64_t seed = 0;
    std::string scenario_digest;
    std::string scenario_kind;
    int obstacle_count = 0;
    double map_width = 0.0;  // echoed so result files are self-contained
    double map_height = 0.0;
    std::optional<Sector> final_sector;    // directed planner only
    std::string config_echo;               // canonical key=value lines
};

/// Baseline RRT*: uniform sampling over the free space (with goal bias),
/// nearest/steer/collision-check/near/choose-parent/insert/rewire per
/// iteration. success=false with metrics when no vertex reaches the goal
/// region. Deterministic given cfg.seed.
PlanResult plan_rrt_star(const Scenario& s, const PlannerConfig& cfg);

// --- shared machinery, used by both planners ---

/// One growth attempt from an accepted sample: nearest, steer, collision
/// check, near, choose-parent, insert, rewire. Returns the inserted vertex
/// index, or -1 when the attempt was abandoned (degenerate sample or
/// blocked extension).
int extend_tree(Tree& t, const Point2& z_rand, const Scenario& s, double step,
                const NearParams& np);

/// Tracks the cheapest goal-region vertex and its improvement trace.
class GoalTracker {
public:
    GoalTracker(const Point2& destination, double goal_radius)
        : destination_(destination), goal_radius_(goal_radius) {}

    /// Call after each iteration; notes the vertex if it entered the goal
    /// region and refreshes the best cost when the tree changed.
    void observe(const Tree& t, int inserted, int iteration);

    bool reached() const { return best_vertex_ >= 0; }
    int best_vertex() const { return best_vertex_; }
    double best_cost() const { return best_cost_; }
    const std::vector<TraceEntry>& trace() const { return trace_; }

private:
    Point2 destination_;
    double goal_radius_;
    std::vector<int> goal_vertices_;
    int best_vertex_ = -1;
    double best_cost_ = 0.0;
    std::vector<TraceEntry> trace_;
};

/// Area-uniform polar sample inside (sector ∩ map bounds ∩ free space).
/// With half_angle == 0 the draw is uniform along the ray. Throws
/// SamplingExhausted after 10,000 consecutive rejections.
Point2 sample_in_sector(const Sector& sector, const Scenario& s, Rng& rng);

}  // namespace sectorplan

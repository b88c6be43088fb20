#include "sectorplan/planner_core.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <sstream>

#include "sectorplan/errors.hpp"

namespace sectorplan {

namespace {
constexpr int kGridCells = 64;            // spatial index resolution per axis
constexpr int kSectorSampleLimit = 10000;  // consecutive rejections before giving up
constexpr int kFreeSampleLimit = 10000000;
}  // namespace

int Tree::GridIndex::bucket_of(const Point2& p) const {
    int c = std::clamp(int(p.x / cell_w), 0, cols - 1);
    int r = std::clamp(int(p.y / cell_h), 0, rows - 1);
    return r * cols + c;
}

Tree::Tree(const Point2& root, double map_width, double map_height) {
    grid_.cols = kGridCells;
    grid_.rows = kGridCells;
    grid_.cell_w = std::max(map_width, 1e-9) / kGridCells;
    grid_.cell_h = std::max(map_height, 1e-9) / kGridCells;
    grid_.buckets.assign(size_t(grid_.cols) * grid_.rows, {});
    vertices_.push_back({root, -1, 0.0});
    children_.emplace_back();
    grid_.buckets[size_t(grid_.bucket_of(root))].push_back(0);
}

int Tree::nearest(const Point2& q) const {
    const int qc = std::clamp(int(q.x / grid_.cell_w), 0, grid_.cols - 1);
    const int qr = std::clamp(int(q.y / grid_.cell_h), 0, grid_.rows - 1);
    const double cell_min = std::min(grid_.cell_w, grid_.cell_h);
    const int max_ring = std::max(grid_.cols, grid_.rows);

    int best = -1;
    double best_dist = std::numeric_limits<double>::infinity();
    auto scan_bucket = [&](int c, int r) {
        for (int idx : grid_.buckets[size_t(r) * grid_.cols + c]) {
            const double d = euclidean_distance(q, vertices_[size_t(idx)].position);
            if (d < best_dist || (d == best_dist && idx < best)) {
                best_dist = d;
                best = idx;
            }
        }
    };

    for (int ring = 0; ring <= max_ring; ++ring) {
        // cells beyond this ring are at least (ring-1)*cell_min away
        if (best >= 0 && best_dist <= (ring - 1) * cell_min) break;
        const int c0 = qc - ring, c1 = qc + ring;
        const int r0 = qr - ring, r1 = qr + ring;
        for (int c = std::max(c0, 0); c <= std::min(c1, grid_.cols - 1); ++c) {
            if (r0 >= 0) scan_bucket(c, r0);
            if (ring > 0 && r1 < grid_.rows) scan_bucket(c, r1);
        }
        for (int r = std::max(r0 + 1, 0); r <= std::min(r1 - 1, grid_.rows - 1); ++r) {
            if (c0 >= 0) scan_bucket(c0, r);
            if (ring > 0 && c1 < grid_.cols) scan_bucket(c1, r);
        }
    }
    return best;
}

std::vector<int> Tree::near(const Point2& q, double radius) const {
    std::vector<int> out;
    if (radius < 0.0) return out;
    const int c0 = std::clamp(int((q.x - radius) / grid_.cell_w), 0, grid_.cols - 1);
    const int c1 = std::clamp(int((q.x + radius) / grid_.cell_w), 0, grid_.cols - 1);
    const int r0 = std::clamp(int((q.y - radius) / grid_.cell_h), 0, grid_.rows - 1);
    const int r1 = std::clamp(int((q.y + radius) / grid_.cell_h), 0, grid_.rows - 1);
    for (int r = r0; r <= r1; ++r)
        for (int c = c0; c <= c1; ++c)
            for (int idx : grid_.buckets[size_t(r) * grid_.cols + c])
                if (euclidean_distance(q, vertices_[size_t(idx)].position) <= radius)
                    out.push_back(idx);
    std::sort(out.begin(), out.end());
    return out;
}

int Tree::insert_node(int parent, const Point2& pos) {
    const int idx = size();
    const double cost =
        vertices_[size_t(parent)].cost_from_root + euclidean_distance(vertices_[size_t(parent)].position, pos);
    vertices_.push_back({pos, parent, cost});
    children_.emplace_back();
    children_[size_t(parent)].push_back(idx);
    grid_.buckets[size_t(grid_.bucket_of(pos))].push_back(idx);
    return idx;
}

void Tree::reparent(int vertex, int new_parent) {
    auto& old_kids = children_[size_t(vertices_[size_t(vertex)].parent)];
    old_kids.erase(std::find(old_kids.begin(), old_kids.end(), vertex));
    vertices_[size_t(vertex)].parent = new_parent;
    children_[size_t(new_parent)].push_back(vertex);
    recompute_subtree_costs(vertex);
}

void Tree::recompute_subtree_costs(int v) {
    // cost = parent cost + edge length, the same form insert_node uses, so
    // an improved parent can only lower every descendant's cost
    std::vector<int> stack{v};
    while (!stack.empty()) {
        const int cur = stack.back();
        stack.pop_back();
        const Vertex& parent = vertices_[size_t(vertices_[size_t(cur)].parent)];
        vertices_[size_t(cur)].cost_from_root =
            parent.cost_from_root +
            euclidean_distance(parent.position, vertices_[size_t(cur)].position);
        for (int c : children_[size_t(cur)]) stack.push_back(c);
    }
}

std::vector<Point2> Tree::spatial_index_points() const {
    std::vector<Point2> pts;
    for (const auto& bucket : grid_.buckets)
        for (int idx : bucket) pts.push_back(vertices_[size_t(idx)].position);
    return pts;
}

Tree Tree::restore(const std::vector<std::pair<Point2, int>>& vertices, double map_width,
                   double map_height) {
    if (vertices.empty() || vertices[0].second != -1)
        throw ValidationError("tree: vertex 0 must be the parentless root");
    Tree t(vertices[0].first, map_width, map_height);
    for (size_t i = 1; i < vertices.size(); ++i) {
        const int parent = vertices[i].second;
        if (parent < 0 || parent >= int(vertices.size()) || parent == int(i))
            throw ValidationError("tree: vertex " + std::to_string(i) + " has invalid parent");
        t.vertices_.push_back({vertices[i].first, parent, 0.0});
        t.children_.emplace_back();
        t.grid_.buckets[size_t(t.grid_.bucket_of(vertices[i].first))].push_back(int(i));
    }
    for (size_t i = 1; i < vertices.size(); ++i)
        t.children_[size_t(vertices[i].second)].push_back(int(i));
    for (int c : t.children_[0]) t.recompute_subtree_costs(c);
    // every vertex must hang off the root (no cycles / orphans)
    std::vector<int> stack{0};
    size_t reached = 0;
    while (!stack.empty()) {
        const int cur = stack.back();
        stack.pop_back();
        ++reached;
        for (int c : t.children_[size_t(cur)]) stack.push_back(c);
    }
    if (reached != vertices.size())
        throw ValidationError("tree: parent links contain a cycle or orphaned vertices");
    return t;
}

double near_radius(const NearParams& p, double n) {
    if (n < 1.0) throw std::invalid_argument("near_radius: n must be >= 1");
    const double shrink = p.gamma * std::pow(std::log(n) / n, 1.0 / p.dim);
    return std::max(p.radius_floor, shrink);
}

Tree initialize_tree(const Point2& src, double map_width, double map_height) {
    return Tree(src, map_width, map_height);
}

Point2 steer(const Point2& from, const Point2& toward, const SteerParams& p) {
    if (from == toward) throw ZeroVector("steer: from and toward coincide");
    const double d = euclidean_distance(from, toward);
    if (d <= p.step) return toward;
    const double scale = p.step / d;
    return Point2(from.x + scale * (toward.x - from.x), from.y + scale * (toward.y - from.y));
}

bool edge_is_free(const Point2& a, const Point2& b, const Scenario& s) {
    if (a.x < 0.0 || a.x > s.width || a.y < 0.0 || a.y > s.height) return false;
    if (b.x < 0.0 || b.x > s.width || b.y < 0.0 || b.y > s.height) return false;
    const Segment seg(a, b);
    for (const Disc& d : s.obstacles)
        if (segment_hits_disc(seg, d)) return false;
    return true;
}

int choose_parent(const Tree& t, const std::vector<int>& candidates, int fallback,
                  const Point2& new_pos, const Scenario& s) {
    int best = fallback;
    double best_cost =
        t.vertex(fallback).cost_from_root + euclidean_distance(t.vertex(fallback).position, new_pos);
    for (int c : candidates) {
        if (c == fallback) continue;
        const double through =
            t.vertex(c).cost_from_root + euclidean_distance(t.vertex(c).position, new_pos);
        if (through < best_cost || (through == best_cost && c < best)) {
            if (!edge_is_free(t.vertex(c).position, new_pos, s)) continue;
            best = c;
            best_cost = through;
        }
    }
    return best;
}

int rewire(Tree& t, const std::vector<int>& near_list, int new_vertex, const Scenario& s) {
    const int parent = t.vertex(new_vertex).parent;
    const Point2 new_pos = t.vertex(new_vertex).position;
    const double new_cost = t.vertex(new_vertex).cost_from_root;
    int count = 0;
    for (int v : near_list) {
        if (v == new_vertex || v == parent) continue;
        const double through = new_cost + euclidean_distance(new_pos, t.vertex(v).position);
        if (through >= t.vertex(v).cost_from_root) continue;
        if (!edge_is_free(new_pos, t.vertex(v).position, s)) continue;
        t.reparent(v, new_vertex);
        ++count;
    }
    return count;
}

NearParams resolve_near_params(const PlannerConfig& cfg, const Scenario& s) {
    NearParams np;
    np.dim = cfg.dim;
    const double diag = std::sqrt(s.width * s.width + s.height * s.height);
    np.gamma = cfg.gamma.value_or(2.0 * diag / std::sqrt(kPi));
    np.radius_floor = cfg.radius_floor.value_or(2.0 * cfg.step);
    return np;
}

int extend_tree(Tree& t, const Point2& z_rand, const Scenario& s, double step,
                const NearParams& np) {
    const int nearest_idx = t.nearest(z_rand);
    if (t.vertex(nearest_idx).position == z_rand) return -1;  // nothing to extend
    const Point2 z_new = steer(t.vertex(nearest_idx).position, z_rand, {step});
    if (!edge_is_free(t.vertex(nearest_idx).position, z_new, s)) return -1;
    const double radius = near_radius(np, double(t.size()));
    const std::vector<int> near_list = t.near(z_new, radius);
    const int parent = choose_parent(t, near_list, nearest_idx, z_new, s);
    const int idx = t.insert_node(parent, z_new);
    rewire(t, near_list, idx, s);
    return idx;
}

void GoalTracker::observe(const Tree& t, int inserted, int iteration) {
    if (inserted < 0) return;  // tree unchanged this iteration
    if (euclidean_distance(t.vertex(inserted).position, destination_) <= goal_radius_)
        goal_vertices_.push_back(inserted);
    if (goal_vertices_.empty()) return;
    // any insert may also have rewired goal vertices cheaper; refresh the min
    int best = -1;
    double best_cost = std::numeric_limits<double>::infinity();
    for (int v : goal_vertices_) {
        const double c = t.vertex(v).cost_from_root;
        if (c < best_cost) {
            best_cost = c;
            best = v;
        }
    }
    if (best_vertex_ < 0 || best_cost < best_cost_) trace_.push_back({iteration, best_cost});
    best_vertex_ = best;
    best_cost_ = best_cost;
}

Point2 sample_in_sector(const Sector& sector, const Scenario& s, Rng& rng) {
    for (int attempt = 0; attempt < kSectorSampleLimit; ++attempt) {
        Point2 p;
        if (sector.half_angle == 0.0) {
            const double r = rng.uniform01() * sector.length;
            p = Point2(sector.apex.x + r * std::cos(sector.heading),
                       sector.apex.y + r * std::sin(sector.heading));
        } else {
            const double a =
                sector.heading + (2.0 * rng.uniform01() - 1.0) * sector.half_angle;
            const double r = sector.length * std::sqrt(rng.uniform01());
            p = Point2(sector.apex.x + r * std::cos(a), sector.apex.y + r * std::sin(a));
        }
        if (is_free(p, s)) return p;
    }
    throw SamplingExhausted("sample_in_sector: sector region appears fully blocked");
}

namespace {

Point2 sample_uniform_free(const Scenario& s, Rng& rng, double goal_bias) {
    if (rng.uniform01() < goal_bias) return s.destination;
    for (int attempt = 0; attempt < kFreeSampleLimit; ++attempt) {
        const Point2 p(rng.uniform(0.0, s.width), rng.uniform(0.0, s.height));
        if (is_free(p, s)) return p;
    }
    throw SamplingExhausted("sample_uniform_free: free space appears to have no area");
}

std::string base_config_echo(const PlannerConfig& cfg, const NearParams& np) {
    std::ostringstream out;
    out << "max_iterations=" << cfg.max_iterations << "\n";
    char buf[64];
    auto real = [&](double v) {
        std::snprintf(buf, sizeof(buf), "%.17g", v);
        return std::string(buf);
    };
    out << "step=" << real(cfg.step) << "\n";
    out << "gamma=" << real(np.gamma) << "\n";
    out << "dim=" << np.dim << "\n";
    out << "radius_floor=" << real(np.radius_floor) << "\n";
    out << "goal_radius=" << real(cfg.goal_radius) << "\n";
    out << "goal_bias=" << real(cfg.goal_bias) << "\n";
    out << "seed=" << cfg.seed << "\n";
    if (cfg.sample_sector) {
        const Sector& sec = *cfg.sample_sector;
        out << "sample_sector=" << real(sec.apex.x) << "," << real(sec.apex.y) << ","
            << real(sec.heading) << "," << real(sec.half_angle) << "," << real(sec.length) << "\n";
    }
    return out.str();
}

}  // namespace

PlanResult plan_rrt_star(const Scenario& s, const PlannerConfig& cfg) {
    const NearParams np = resolve_near_params(cfg, s);

    PlanResult result;
    result.planner = "rrt_star";
    result.rng_algorithm = Rng::algorithm_id();
    result.seed = cfg.seed;
    result.scenario_digest = scenario_digest(s);
    result.scenario_kind = to_string(s.kind);
    result.obstacle_count = int(s.obstacles.size());
    result.map_width = s.width;
    result.map_height = s.height;
    result.config_echo = "planner=rrt_star\n" + base_config_echo(cfg, np);

    Rng rng(cfg.seed);
    Tree tree = initialize_tree(s.source, s.width, s.height);
    GoalTracker goal(s.destination, cfg.goal_radius);

    const auto t0 = std::chrono::steady_clock::now();
    for (int iter = 0; iter < cfg.max_iterations; ++iter) {
        Point2 z_rand;
        try {
            z_rand = cfg.sample_sector ? sample_in_sector(*cfg.sample_sector, s, rng)
                                       : sample_uniform_free(s, rng, cfg.goal_bias);
        } catch (const SamplingExhausted&) {
            continue;  // iteration consumed, nothing to extend
        }
        const int inserted = extend_tree(tree, z_rand, s, cfg.step, np);
        goal.observe(tree, inserted, iter);
    }
    const auto t1 = std::chrono::steady_clock::now();

    result.node_count = tree.size();
    result.elapsed_seconds = std::chrono::duration<double>(t1 - t0).count();
    result.success = goal.reached();
    result.best_cost_trace = goal.trace();
    if (result.success) {
        std::vector<Point2> waypoints;
        for (int v = goal.best_vertex(); v != -1; v = tree.vertex(v).parent)
            waypoints.push_back(tree.vertex(v).position);
        std::reverse(waypoints.begin(), waypoints.end());
        result.path = make_path(std::move(waypoints));
        result.total_path_cost = result.path->total_cost;
        result.average_path_cost =
            result.path->total_cost / double(result.path->waypoints.size() - 1);
    }
    result.tree = std::move(tree);
    return result;
}

}  // namespace sectorplan

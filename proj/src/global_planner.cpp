#include "sectorplan/global_planner.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>

#include "sectorplan/errors.hpp"

namespace sectorplan {

namespace {

const double kSqrt2 = std::sqrt(2.0);

// Grid costs are tracked as axial/diagonal step counts; the scalar value is
// always derived the same way, so equal-count paths compare bit-identically
// in both astar and the Dijkstra oracle.
struct StepCount {
    int axial = 0;
    int diagonal = 0;
    double value(double cell_size) const { return (axial + diagonal * kSqrt2) * cell_size; }
};

struct Move {
    int dc, dr;
    bool diagonal;
};

constexpr Move kMoves[8] = {
    {1, 0, false}, {-1, 0, false}, {0, 1, false}, {0, -1, false},
    {1, 1, true},  {1, -1, true},  {-1, 1, true}, {-1, -1, true},
};

// Diagonal steps may not cut a fully closed corner: forbidden when both
// adjacent axial cells are blocked.
bool move_allowed(const GridMap& g, const Cell& from, const Move& m) {
    const int c = from.col + m.dc;
    const int r = from.row + m.dr;
    if (!g.in_grid(c, r) || g.is_blocked(c, r)) return false;
    if (m.diagonal && g.is_blocked(from.col + m.dc, from.row) &&
        g.is_blocked(from.col, from.row + m.dr))
        return false;
    return true;
}

struct SearchNode {
    double priority;   // f for astar, g for dijkstra
    double g;
    int row, col;
};

// min-f, then deeper (larger g), then smaller (row, col)
struct NodeOrder {
    bool operator()(const SearchNode& a, const SearchNode& b) const {
        if (a.priority != b.priority) return a.priority > b.priority;
        if (a.g != b.g) return a.g < b.g;
        if (a.row != b.row) return a.row > b.row;
        return a.col > b.col;
    }
};

struct SearchResult {
    StepCount cost;
    std::vector<Cell> cells;  // src..dst
    bool found = false;
};

// Shared best-first search; with use_heuristic it is astar, without it is
// uniform-cost search. Lazy-deletion queue with reopening, so optimality
// does not depend on heuristic consistency under rounding.
SearchResult best_first_search(const GridMap& g, const Cell& src, const Cell& dst,
                               bool use_heuristic) {
    if (!g.in_grid(src.col, src.row) || g.is_blocked(src.col, src.row))
        throw NoGlobalPath("search: source cell blocked or outside grid");
    if (!g.in_grid(dst.col, dst.row) || g.is_blocked(dst.col, dst.row))
        throw NoGlobalPath("search: destination cell blocked or outside grid");

    const size_t n = size_t(g.cols) * g.rows;
    std::vector<double> best_g(n, std::numeric_limits<double>::infinity());
    std::vector<StepCount> counts(n);
    std::vector<int> parent(n, -1);
    auto idx = [&](int col, int row) { return size_t(row) * g.cols + col; };

    const Point2 dst_center = g.cell_center(dst);
    auto heuristic = [&](int col, int row) {
        return use_heuristic ? euclidean_distance(g.cell_center({col, row}), dst_center) : 0.0;
    };

    std::priority_queue<SearchNode, std::vector<SearchNode>, NodeOrder> open;
    best_g[idx(src.col, src.row)] = 0.0;
    open.push({heuristic(src.col, src.row), 0.0, src.row, src.col});

    while (!open.empty()) {
        const SearchNode node = open.top();
        open.pop();
        const size_t i = idx(node.col, node.row);
        if (node.g != best_g[i]) continue;  // stale entry
        if (node.col == dst.col && node.row == dst.row) break;

        for (const Move& m : kMoves) {
            if (!move_allowed(g, {node.col, node.row}, m)) continue;
            const int nc = node.col + m.dc;
            const int nr = node.row + m.dr;
            StepCount cand = counts[i];
            (m.diagonal ? cand.diagonal : cand.axial) += 1;
            const double cand_g = cand.value(g.cell_size);
            const size_t ni = idx(nc, nr);
            if (cand_g < best_g[ni]) {
                best_g[ni] = cand_g;
                counts[ni] = cand;
                parent[ni] = int(i);
                open.push({cand_g + heuristic(nc, nr), cand_g, nr, nc});
            }
        }
    }

    const size_t di = idx(dst.col, dst.row);
    SearchResult result;
    if (best_g[di] == std::numeric_limits<double>::infinity()) return result;
    result.found = true;
    result.cost = counts[di];
    for (int i = int(di); i != -1; i = parent[i])
        result.cells.push_back({i % g.cols, i / g.cols});
    std::reverse(result.cells.begin(), result.cells.end());
    return result;
}

}  // namespace

Cell GridMap::cell_of(const Point2& p) const {
    int c = int(std::floor(p.x / cell_size));
    int r = int(std::floor(p.y / cell_size));
    c = std::clamp(c, 0, cols - 1);
    r = std::clamp(r, 0, rows - 1);
    return {c, r};
}

GridMap rasterize(const Scenario& s, double cell_size, std::optional<double> inflation) {
    if (!(cell_size > 0.0)) throw std::invalid_argument("rasterize: cell_size must be positive");
    GridMap g;
    g.cell_size = cell_size;
    g.cols = std::max(1, int(std::ceil(s.width / cell_size)));
    g.rows = std::max(1, int(std::ceil(s.height / cell_size)));
    g.blocked.assign(size_t(g.cols) * g.rows, 0);

    for (int r = 0; r < g.rows; ++r) {
        for (int c = 0; c < g.cols; ++c) {
            const Point2 center = g.cell_center({c, r});
            bool blocked = !is_free(center, s);
            if (!blocked) {
                for (const Disc& d : s.obstacles) {
                    const double infl = inflation.value_or(d.radius);
                    if (euclidean_distance(center, d.center) <= d.radius + infl) {
                        blocked = true;
                        break;
                    }
                }
            }
            g.blocked[size_t(r) * g.cols + c] = blocked ? 1 : 0;
        }
    }

    const Cell sc = g.cell_of(s.source);
    const Cell dc = g.cell_of(s.destination);
    if (g.is_blocked(sc.col, sc.row))
        throw SourceBlocked("rasterize: source cell blocked after inflation");
    if (g.is_blocked(dc.col, dc.row))
        throw DestinationBlocked("rasterize: destination cell blocked after inflation");
    return g;
}

GlobalPath astar(const GridMap& g, const Cell& src, const Cell& dst) {
    const SearchResult r = best_first_search(g, src, dst, true);
    if (!r.found) throw NoGlobalPath("astar: destination unreachable");
    GlobalPath path;
    path.grid_cost = r.cost.value(g.cell_size);
    path.cells = r.cells;
    path.waypoints.reserve(r.cells.size());
    for (const Cell& c : r.cells) path.waypoints.push_back(g.cell_center(c));
    return path;
}

double dijkstra_oracle(const GridMap& g, const Cell& src, const Cell& dst) {
    const SearchResult r = best_first_search(g, src, dst, false);
    if (!r.found) throw NoGlobalPath("dijkstra_oracle: destination unreachable");
    return r.cost.value(g.cell_size);
}

GlobalPath plan_global(const Scenario& s, double cell_size, std::optional<double> inflation) {
    const GridMap g = rasterize(s, cell_size, inflation);
    GlobalPath path = astar(g, g.cell_of(s.source), g.cell_of(s.destination));
    if (path.waypoints.size() == 1) {
        path.waypoints = {s.source, s.destination};
    } else {
        path.waypoints.front() = s.source;
        path.waypoints.back() = s.destination;
    }
    return path;
}

}  // namespace sectorplan

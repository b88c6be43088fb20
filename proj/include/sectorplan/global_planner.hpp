#pragma once

#include <optional>
#include <vector>

#include "sectorplan/geometry.hpp"
#include "sectorplan/world.hpp"

namespace sectorplan {

struct Cell {
    int col = 0;
    int row = 0;
    bool operator==(const Cell& o) const { return col == o.col && row == o.row; }
    bool operator!=(const Cell& o) const { return !(*this == o); }
};

/// Boolean occupancy grid covering the scenario map.
/// A cell is blocked iff its center point is not free or lies within the
/// inflation distance of any disc boundary.
struct GridMap {
    int cols = 0;
    int rows = 0;
    double cell_size = 1.0;
    std::vector<uint8_t> blocked;  // row-major, rows*cols

    bool is_blocked(int col, int row) const { return blocked[size_t(row) * cols + col] != 0; }
    bool in_grid(int col, int row) const { return col >= 0 && col < cols && row >= 0 && row < rows; }
    Point2 cell_center(const Cell& c) const {
        return Point2((c.col + 0.5) * cell_size, (c.row + 0.5) * cell_size);
    }
    Cell cell_of(const Point2& p) const;
};

/// Ordered cell-center waypoints with the grid path cost. When produced by
/// plan_global the endpoints are snapped to the exact source/destination.
struct GlobalPath {
    std::vector<Point2> waypoints;
    double grid_cost = 0.0;
    std::vector<Cell> cells;  // the underlying grid cells, one per unsnapped waypoint
};

/// Rasterizes the scenario onto a grid of the given cell size.
/// inflation: distance added around each disc; defaults to the disc's own
/// radius. Throws SourceBlocked/DestinationBlocked when the endpoint cells
/// come out blocked.
GridMap rasterize(const Scenario& s, double cell_size,
                  std::optional<double> inflation = std::nullopt);

/// Minimum-cost 8-connected path, axial edges cost cell_size and diagonal
/// edges sqrt(2)*cell_size. Diagonal steps are forbidden when both adjacent
/// axial cells are blocked. Euclidean heuristic; cost equals dijkstra_oracle
/// bit-exactly. Throws NoGlobalPath when dst is unreachable.
GlobalPath astar(const GridMap& g, const Cell& src, const Cell& dst);

/// Exact shortest-path cost by uniform-cost search over the same edges.
/// Test oracle for astar. Throws NoGlobalPath when dst is unreachable.
double dijkstra_oracle(const GridMap& g, const Cell& src, const Cell& dst);

/// Rasterizes, runs astar between the scenario endpoints, and snaps the
/// first/last waypoints to the exact source/destination.
GlobalPath plan_global(const Scenario& s, double cell_size,
                       std::optional<double> inflation = std::nullopt);

}  // namespace sectorplan

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "sectorplan/geometry.hpp"

namespace sectorplan {

enum class ScenarioKind { S1, S2, S3, S4, S5, S6, Custom };

std::string to_string(ScenarioKind k);
std::optional<ScenarioKind> parse_kind(const std::string& s);

/// Obstacle count each named kind generates.
int kind_obstacle_count(ScenarioKind k);

/// Environment map with obstacle set, source and destination.
/// Invariants (enforced on generation and on load):
///   - source/destination inside bounds and outside every disc,
///   - every disc center inside bounds,
///   - obstacle count matches the kind unless kind == Custom.
struct Scenario {
    double width = 0.0;
    double height = 0.0;
    std::vector<Disc> obstacles;
    Point2 source;
    Point2 destination;
    ScenarioKind kind = ScenarioKind::Custom;
    uint64_t seed = 0;
};

/// Waypoint sequence with its summed edge cost.
struct Path {
    std::vector<Point2> waypoints;
    double total_cost = 0.0;
};

/// Builds a Path from waypoints, computing total_cost.
Path make_path(std::vector<Point2> waypoints);

struct ScenarioParams {
    double width = 1000.0;
    double height = 1000.0;
    double obstacle_radius = 15.0;
    // Overrides the kind's obstacle count; the resulting scenario is then
    // marked Custom while still drawing centers from the kind's distribution.
    std::optional<int> obstacle_count;
};

/// Deterministic scenario construction for (kind, seed, params).
/// Spatial laws per kind:
///   S1: 80/20 mixture of a Gaussian around the source (sigma = 15% of the
///       map diagonal) and uniform over the map,
///   S2/S3: uniform over the corridor within 20% map-width of the straight
///       source-destination segment,
///   S4: uniform over the map,
///   S5: Gaussian around the map center (sigma = 15% diagonal),
///   S6: round-robin thirds of Gaussians around source, center, destination.
/// Discs overlapping source/destination inflated by one disc radius are
/// rejection-resampled. Throws GenerationFailed after 10,000 attempts for
/// any single obstacle.
Scenario generate_scenario(ScenarioKind kind, uint64_t seed, const ScenarioParams& params = {});

/// True iff p is inside map bounds (closed) and strictly outside every disc;
/// disc boundary counts as not free.
bool is_free(const Point2& p, const Scenario& s);

/// Validates all Scenario invariants; throws ValidationError naming the field.
void validate_scenario(const Scenario& s);

/// Scenario file format: a single JSON document with exactly the keys
///   version (must be 1), kind, seed, map{width,height},
///   source{x,y}, destination{x,y}, obstacles[{x,y,r}...]
/// Unknown fields are rejected. Reals are written with 17 significant
/// digits so save -> load round-trips field-exactly.
std::string serialize_scenario(const Scenario& s);
Scenario parse_scenario(const std::string& text);

void save_scenario(const Scenario& s, const std::string& file_path);
Scenario load_scenario(const std::string& file_path);

/// FNV-1a hash of the canonical serialization, as fixed-width hex.
std::string scenario_digest(const Scenario& s);

}  // namespace sectorplan

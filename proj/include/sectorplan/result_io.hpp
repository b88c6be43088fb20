#pragma once

#include <string>

#include "sectorplan/planner_core.hpp"

namespace sectorplan {

/// Plan-result file: a JSON document carrying the metrics record, config
/// echo, waypoint list, improvement trace, final sector, and the full tree
/// (positions + parent links) so results can be re-rendered standalone.
/// Reals use 17 significant digits; elapsed_seconds sits on its own line so
/// determinism comparisons can mask the only wall-clock field.
std::string serialize_result(const PlanResult& r);
PlanResult parse_result(const std::string& text);

void save_result(const PlanResult& r, const std::string& file_path);
PlanResult load_result(const std::string& file_path);

}  // namespace sectorplan

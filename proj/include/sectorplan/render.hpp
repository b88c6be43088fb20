#pragma once

#include <string>

#include "sectorplan/planner_core.hpp"
#include "sectorplan/world.hpp"

namespace sectorplan {

struct RenderOptions {
    bool draw_tree = true;
    bool draw_sector = true;
};

/// Standalone SVG 1.1 document: map frame, obstacle discs, tree edges,
/// final path, endpoint markers, and the final sector outline when the
/// result carries one. World y-up is mapped to image y-down. Output bytes
/// are deterministic for fixed inputs. Throws DigestMismatch when the
/// result was produced from a different scenario.
std::string render_svg(const PlanResult& result, const Scenario& s,
                       const RenderOptions& opts = {});

}  // namespace sectorplan

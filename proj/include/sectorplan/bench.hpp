#pragma once

#include <optional>
#include <string>
#include <vector>

#include "sectorplan/ad_rrt_star.hpp"
#include "sectorplan/planner_core.hpp"
#include "sectorplan/world.hpp"

namespace sectorplan {

/// One benchmark run, one CSV row.
struct MetricsRecord {
    std::string planner;        // rrt_star | ad_rrt_star
    std::string scenario_kind;  // cell label, e.g. "S4" or "S4@100"
    int obstacle_count = 0;
    uint64_t seed = 0;
    int node_count = 0;
    double elapsed_seconds = 0.0;
    std::optional<double> total_path_cost;    // absent when the run failed
    std::optional<double> average_path_cost;
    bool success = false;
    std::string config_digest;  // hash of the full planner config echo
};

/// A benchmark cell: a scenario kind at a possibly overridden obstacle count.
struct CampaignCell {
    ScenarioKind kind = ScenarioKind::S4;
    int obstacle_count = 0;  // 0 → the kind's own count
    std::string label;       // defaults to kind, or kind@count when overridden
};

struct CampaignSpec {
    std::vector<CampaignCell> cells;
    int trials = 20;
    uint64_t base_seed = 0;
    ScenarioParams scenario_params;
    PlannerConfig planner;  // shared by both planners for fairness
    // directed-planner extras; its base is overwritten with `planner`
    AdPlannerConfig ad;
    int threads = 0;  // 0 → SECTORPLAN_THREADS or hardware concurrency
};

/// Parses a cell token like "S3" or "S4:100".
std::optional<CampaignCell> parse_cell(const std::string& token);

struct CampaignResult {
    std::vector<MetricsRecord> rows;  // sorted by (cell, trial, planner)
    std::string summary;              // per-cell medians table
};

/// Runs both planners on every (cell, trial) pair with paired seeds
/// (base_seed + trial), in a bounded worker pool. Rows are deterministic
/// regardless of parallelism; elapsed_seconds is the only wall-clock field.
CampaignResult run_campaign(const CampaignSpec& spec);

/// CSV with header, LF line endings, elapsed_seconds as the final column so
/// comparison tooling can mask the one nondeterministic field.
std::string to_csv(const std::vector<MetricsRecord>& rows);
void write_csv(const std::vector<MetricsRecord>& rows, const std::string& file_path);

/// Converts a finished plan into its benchmark record.
MetricsRecord to_record(const PlanResult& r, const std::string& cell_label, int obstacle_count);

/// FNV-1a content hash used for config digests.
std::string fnv1a_hex(const std::string& text);

/// Resolved worker count: explicit > SECTORPLAN_THREADS > hardware.
int resolve_thread_count(int requested);

double median(std::vector<double> values);

}  // namespace sectorplan

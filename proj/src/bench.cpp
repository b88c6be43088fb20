#include "sectorplan/bench.hpp"

#include <algorithm>
#include <atomic>
#include <cinttypes>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <mutex>
#include <sstream>
#include <thread>

namespace sectorplan {

std::string fnv1a_hex(const std::string& text) {
    uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : text) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    char buf[20];
    std::snprintf(buf, sizeof(buf), "%016" PRIx64, h);
    return buf;
}

std::optional<CampaignCell> parse_cell(const std::string& token) {
    CampaignCell cell;
    const auto colon = token.find(':');
    const std::string kind_str = token.substr(0, colon);
    const auto kind = parse_kind(kind_str);
    if (!kind || *kind == ScenarioKind::Custom) return std::nullopt;
    cell.kind = *kind;
    if (colon != std::string::npos) {
        try {
            cell.obstacle_count = std::stoi(token.substr(colon + 1));
        } catch (...) {
            return std::nullopt;
        }
        if (cell.obstacle_count <= 0) return std::nullopt;
    }
    if (cell.obstacle_count == 0 || cell.obstacle_count == kind_obstacle_count(cell.kind)) {
        cell.obstacle_count = kind_obstacle_count(cell.kind);
        cell.label = to_string(cell.kind);
    } else {
        cell.label = to_string(cell.kind) + "@" + std::to_string(cell.obstacle_count);
    }
    return cell;
}

MetricsRecord to_record(const PlanResult& r, const std::string& cell_label, int obstacle_count) {
    MetricsRecord rec;
    rec.planner = r.planner;
    rec.scenario_kind = cell_label;
    rec.obstacle_count = obstacle_count;
    rec.seed = r.seed;
    rec.node_count = r.node_count;
    rec.elapsed_seconds = r.elapsed_seconds;
    rec.total_path_cost = r.total_path_cost;
    rec.average_path_cost = r.average_path_cost;
    rec.success = r.success;
    rec.config_digest = fnv1a_hex(r.config_echo);
    return rec;
}

int resolve_thread_count(int requested) {
    if (requested > 0) return requested;
    if (const char* env = std::getenv("SECTORPLAN_THREADS")) {
        const int n = std::atoi(env);
        if (n > 0) return n;
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw > 0 ? int(hw) : 1;
}

double median(std::vector<double> values) {
    std::sort(values.begin(), values.end());
    const size_t n = values.size();
    if (n == 0) return 0.0;
    return n % 2 ? values[n / 2] : 0.5 * (values[n / 2 - 1] + values[n / 2]);
}

namespace {

std::string fmt_real(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

struct CellStats {
    std::vector<double> nodes, elapsed, total, average;
    int successes = 0;
    int runs = 0;

    void add(const MetricsRecord& r) {
        ++runs;
        nodes.push_back(double(r.node_count));
        elapsed.push_back(r.elapsed_seconds);
        if (r.success) {
            ++successes;
            total.push_back(*r.total_path_cost);
            average.push_back(*r.average_path_cost);
        }
    }
};

std::string format_summary(const CampaignSpec& spec, const std::vector<MetricsRecord>& rows) {
    std::ostringstream out;
    out << "cell       planner      trials ok     med.nodes  med.time(s)  med.total_cost  "
           "med.avg_cost\n";
    for (const auto& cell : spec.cells) {
        for (const std::string planner : {"rrt_star", "ad_rrt_star"}) {
            CellStats st;
            for (const auto& r : rows)
                if (r.scenario_kind == cell.label && r.planner == planner) st.add(r);
            char line[256];
            std::string total = st.total.empty() ? "-" : fmt_real(median(st.total));
            std::string avg = st.average.empty() ? "-" : fmt_real(median(st.average));
            std::snprintf(line, sizeof(line), "%-10s %-12s %3d/%-3d %12.1f %12.4f %15s %13s\n",
                          cell.label.c_str(), planner.c_str(), st.successes, st.runs,
                          median(st.nodes), median(st.elapsed), total.c_str(), avg.c_str());
            out << line;
        }
    }
    return out.str();
}

}  // namespace

std::string to_csv(const std::vector<MetricsRecord>& rows) {
    std::ostringstream out;
    out << "planner,scenario_kind,obstacle_count,seed,node_count,total_path_cost,"
           "average_path_cost,success,config_digest,elapsed_seconds\n";
    for (const auto& r : rows) {
        out << r.planner << "," << r.scenario_kind << "," << r.obstacle_count << "," << r.seed
            << "," << r.node_count << ",";
        out << (r.total_path_cost ? fmt_real(*r.total_path_cost) : "") << ",";
        out << (r.average_path_cost ? fmt_real(*r.average_path_cost) : "") << ",";
        out << (r.success ? "true" : "false") << "," << r.config_digest << ","
            << fmt_real(r.elapsed_seconds) << "\n";
    }
    return out.str();
}

void write_csv(const std::vector<MetricsRecord>& rows, const std::string& file_path) {
    std::ofstream out(file_path, std::ios::binary);
    if (!out) throw std::runtime_error("write_csv: cannot open " + file_path);
    out << to_csv(rows);
    if (!out) throw std::runtime_error("write_csv: write failed for " + file_path);
}

CampaignResult run_campaign(const CampaignSpec& spec) {
    struct Job {
        size_t cell_index;
        int trial;
    };
    std::vector<Job> jobs;
    for (size_t c = 0; c < spec.cells.size(); ++c)
        for (int t = 0; t < spec.trials; ++t) jobs.push_back({c, t});

    struct Keyed {
        size_t cell_index;
        int trial;
        MetricsRecord record;
    };
    std::vector<Keyed> collected;
    std::mutex collect_mutex;
    std::atomic<size_t> next_job{0};

    auto worker = [&] {
        for (;;) {
            const size_t j = next_job.fetch_add(1);
            if (j >= jobs.size()) return;
            const Job& job = jobs[j];
            const CampaignCell& cell = spec.cells[job.cell_index];
            const uint64_t seed = spec.base_seed + uint64_t(job.trial);

            ScenarioParams params = spec.scenario_params;
            if (cell.obstacle_count != kind_obstacle_count(cell.kind))
                params.obstacle_count = cell.obstacle_count;
            const Scenario scenario = generate_scenario(cell.kind, seed, params);

            PlannerConfig base = spec.planner;
            base.seed = seed;
            AdPlannerConfig ad = spec.ad;
            ad.base = base;  // shared knobs: same N, step, goal radius, near params

            const PlanResult base_result = plan_rrt_star(scenario, base);
            const PlanResult ad_result = plan_ad_rrt_star(scenario, ad);

            std::lock_guard<std::mutex> lock(collect_mutex);
            collected.push_back(
                {job.cell_index, job.trial, to_record(base_result, cell.label, cell.obstacle_count)});
            collected.push_back(
                {job.cell_index, job.trial, to_record(ad_result, cell.label, cell.obstacle_count)});
        }
    };

    const int thread_count = std::min<int>(resolve_thread_count(spec.threads), int(jobs.size()));
    if (thread_count <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(size_t(thread_count));
        for (int i = 0; i < thread_count; ++i) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }

    std::sort(collected.begin(), collected.end(), [](const Keyed& a, const Keyed& b) {
        if (a.cell_index != b.cell_index) return a.cell_index < b.cell_index;
        if (a.trial != b.trial) return a.trial < b.trial;
        return a.record.planner < b.record.planner;
    });

    CampaignResult result;
    result.rows.reserve(collected.size());
    for (auto& k : collected) result.rows.push_back(std::move(k.record));
    result.summary = format_summary(spec, result.rows);
    return result;
}

}  // namespace sectorplan

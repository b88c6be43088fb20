#include "sectorplan/result_io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "sectorplan/errors.hpp"

namespace sectorplan {

namespace {

std::string fmt_real(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::string json_escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        if (c == '"' || c == '\\') {
            out += '\\';
            out += c;
        } else if (c == '\n') {
            out += "\\n";
        } else {
            out += c;
        }
    }
    return out;
}

}  // namespace

std::string serialize_result(const PlanResult& r) {
    std::ostringstream out;
    out << "{\n";
    out << "  \"version\": 1,\n";
    out << "  \"planner\": \"" << r.planner << "\",\n";
    out << "  \"rng\": \"" << r.rng_algorithm << "\",\n";
    out << "  \"seed\": " << r.seed << ",\n";
    out << "  \"scenario_digest\": \"" << r.scenario_digest << "\",\n";
    out << "  \"scenario_kind\": \"" << r.scenario_kind << "\",\n";
    out << "  \"obstacle_count\": " << r.obstacle_count << ",\n";
    out << "  \"map\": {\"width\": " << fmt_real(r.map_width)
        << ", \"height\": " << fmt_real(r.map_height) << "},\n";
    out << "  \"success\": " << (r.success ? "true" : "false") << ",\n";
    out << "  \"node_count\": " << r.node_count << ",\n";
    out << "  \"total_path_cost\": "
        << (r.total_path_cost ? fmt_real(*r.total_path_cost) : "null") << ",\n";
    out << "  \"average_path_cost\": "
        << (r.average_path_cost ? fmt_real(*r.average_path_cost) : "null") << ",\n";

    out << "  \"config\": [";
    {
        std::istringstream lines(r.config_echo);
        std::string line;
        bool first = true;
        while (std::getline(lines, line)) {
            if (line.empty()) continue;
            out << (first ? "" : ", ") << "\"" << json_escape(line) << "\"";
            first = false;
        }
    }
    out << "],\n";

    out << "  \"best_cost_trace\": [";
    for (size_t i = 0; i < r.best_cost_trace.size(); ++i)
        out << (i ? ", " : "") << "[" << r.best_cost_trace[i].iteration << ", "
            << fmt_real(r.best_cost_trace[i].cost) << "]";
    out << "],\n";

    if (r.final_sector) {
        const Sector& sec = *r.final_sector;
        out << "  \"sector\": {\"apex_x\": " << fmt_real(sec.apex.x)
            << ", \"apex_y\": " << fmt_real(sec.apex.y)
            << ", \"heading\": " << fmt_real(sec.heading)
            << ", \"half_angle\": " << fmt_real(sec.half_angle)
            << ", \"length\": " << fmt_real(sec.length) << "},\n";
    } else {
        out << "  \"sector\": null,\n";
    }

    if (r.path) {
        out << "  \"path\": [";
        for (size_t i = 0; i < r.path->waypoints.size(); ++i)
            out << (i ? ", " : "") << "[" << fmt_real(r.path->waypoints[i].x) << ", "
                << fmt_real(r.path->waypoints[i].y) << "]";
        out << "],\n";
    } else {
        out << "  \"path\": null,\n";
    }

    out << "  \"tree\": [";
    for (int i = 0; i < r.tree.size(); ++i) {
        const auto& v = r.tree.vertex(i);
        out << (i ? ",\n    " : "\n    ") << "[" << fmt_real(v.position.x) << ", "
            << fmt_real(v.position.y) << ", " << v.parent << "]";
    }
    out << (r.tree.size() ? "\n  ],\n" : "],\n");

    // the only wall-clock field, on a dedicated line so comparisons can mask it
    out << "  \"elapsed_seconds\": " << fmt_real(r.elapsed_seconds) << "\n";
    out << "}\n";
    return out.str();
}

PlanResult parse_result(const std::string& text) {
    using nlohmann::json;
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError(std::string("result: ") + e.what());
    }
    try {
        PlanResult r;
        r.planner = doc.at("planner").get<std::string>();
        r.rng_algorithm = doc.at("rng").get<std::string>();
        r.seed = doc.at("seed").get<uint64_t>();
        r.scenario_digest = doc.at("scenario_digest").get<std::string>();
        r.scenario_kind = doc.at("scenario_kind").get<std::string>();
        r.obstacle_count = doc.at("obstacle_count").get<int>();
        r.map_width = doc.at("map").at("width").get<double>();
        r.map_height = doc.at("map").at("height").get<double>();
        r.success = doc.at("success").get<bool>();
        r.node_count = doc.at("node_count").get<int>();
        if (!doc.at("total_path_cost").is_null())
            r.total_path_cost = doc["total_path_cost"].get<double>();
        if (!doc.at("average_path_cost").is_null())
            r.average_path_cost = doc["average_path_cost"].get<double>();
        std::string echo;
        for (const auto& line : doc.at("config")) echo += line.get<std::string>() + "\n";
        r.config_echo = echo;
        for (const auto& e : doc.at("best_cost_trace"))
            r.best_cost_trace.push_back({e.at(0).get<int>(), e.at(1).get<double>()});
        if (!doc.at("sector").is_null()) {
            const auto& sec = doc["sector"];
            r.final_sector = Sector(
                Point2(sec.at("apex_x").get<double>(), sec.at("apex_y").get<double>()),
                sec.at("heading").get<double>(), sec.at("half_angle").get<double>(),
                sec.at("length").get<double>());
        }
        if (!doc.at("path").is_null()) {
            std::vector<Point2> waypoints;
            for (const auto& w : doc["path"])
                waypoints.emplace_back(w.at(0).get<double>(), w.at(1).get<double>());
            r.path = make_path(std::move(waypoints));
        }
        std::vector<std::pair<Point2, int>> vertices;
        for (const auto& v : doc.at("tree"))
            vertices.emplace_back(Point2(v.at(0).get<double>(), v.at(1).get<double>()),
                                  v.at(2).get<int>());
        if (!vertices.empty()) r.tree = Tree::restore(vertices, r.map_width, r.map_height);
        r.elapsed_seconds = doc.at("elapsed_seconds").get<double>();
        return r;
    } catch (const json::exception& e) {
        throw ParseError(std::string("result: ") + e.what());
    }
}

void save_result(const PlanResult& r, const std::string& file_path) {
    std::ofstream out(file_path, std::ios::binary);
    if (!out) throw std::runtime_error("save_result: cannot open " + file_path);
    out << serialize_result(r);
    if (!out) throw std::runtime_error("save_result: write failed for " + file_path);
}

PlanResult load_result(const std::string& file_path) {
    std::ifstream in(file_path, std::ios::binary);
    if (!in) throw ParseError("load_result: cannot open " + file_path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_result(buf.str());
}

}  // namespace sectorplan

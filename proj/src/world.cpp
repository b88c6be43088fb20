#include "sectorplan/world.hpp"

#include <cinttypes>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "sectorplan/errors.hpp"
#include "sectorplan/rng.hpp"

namespace sectorplan {

namespace {

constexpr int kMaxPlacementAttempts = 10000;

std::string fmt_real(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

bool in_bounds(const Point2& p, double w, double h) {
    return p.x >= 0.0 && p.x <= w && p.y >= 0.0 && p.y <= h;
}

}  // namespace

std::string to_string(ScenarioKind k) {
    switch (k) {
        case ScenarioKind::S1: return "S1";
        case ScenarioKind::S2: return "S2";
        case ScenarioKind::S3: return "S3";
        case ScenarioKind::S4: return "S4";
        case ScenarioKind::S5: return "S5";
        case ScenarioKind::S6: return "S6";
        case ScenarioKind::Custom: return "Custom";
    }
    return "Custom";
}

std::optional<ScenarioKind> parse_kind(const std::string& s) {
    if (s == "S1") return ScenarioKind::S1;
    if (s == "S2") return ScenarioKind::S2;
    if (s == "S3") return ScenarioKind::S3;
    if (s == "S4") return ScenarioKind::S4;
    if (s == "S5") return ScenarioKind::S5;
    if (s == "S6") return ScenarioKind::S6;
    if (s == "Custom") return ScenarioKind::Custom;
    return std::nullopt;
}

int kind_obstacle_count(ScenarioKind k) {
    switch (k) {
        case ScenarioKind::S1: return 50;
        case ScenarioKind::S2: return 50;
        case ScenarioKind::S3: return 68;
        case ScenarioKind::S4: return 70;
        case ScenarioKind::S5: return 80;
        case ScenarioKind::S6: return 85;
        case ScenarioKind::Custom: return 0;
    }
    return 0;
}

Path make_path(std::vector<Point2> waypoints) {
    Path p;
    p.waypoints = std::move(waypoints);
    p.total_cost = 0.0;
    for (size_t i = 1; i < p.waypoints.size(); ++i)
        p.total_cost += euclidean_distance(p.waypoints[i - 1], p.waypoints[i]);
    return p;
}

bool is_free(const Point2& p, const Scenario& s) {
    if (!in_bounds(p, s.width, s.height)) return false;
    for (const Disc& d : s.obstacles)
        if (euclidean_distance(p, d.center) <= d.radius) return false;
    return true;
}

void validate_scenario(const Scenario& s) {
    if (!(s.width > 0.0) || !(s.height > 0.0))
        throw ValidationError("map: width and height must be positive");
    if (!in_bounds(s.source, s.width, s.height))
        throw ValidationError("source: outside map bounds");
    if (!in_bounds(s.destination, s.width, s.height))
        throw ValidationError("destination: outside map bounds");
    for (size_t i = 0; i < s.obstacles.size(); ++i) {
        const Disc& d = s.obstacles[i];
        if (!in_bounds(d.center, s.width, s.height))
            throw ValidationError("obstacles[" + std::to_string(i) + "]: center outside map bounds");
        if (euclidean_distance(s.source, d.center) <= d.radius)
            throw ValidationError("source: inside obstacles[" + std::to_string(i) + "]");
        if (euclidean_distance(s.destination, d.center) <= d.radius)
            throw ValidationError("destination: inside obstacles[" + std::to_string(i) + "]");
    }
    if (s.kind != ScenarioKind::Custom &&
        static_cast<int>(s.obstacles.size()) != kind_obstacle_count(s.kind))
        throw ValidationError("obstacles: count " + std::to_string(s.obstacles.size()) +
                              " does not match kind " + to_string(s.kind));
}

namespace {

// One obstacle-center draw from the kind's spatial law. Gaussian components
// retry out-of-bounds draws internally (truncation) so mixtures keep their
// stated weights; only clearance rejection happens in the caller.
Point2 draw_center(ScenarioKind kind, int index, const Scenario& s, Rng& rng) {
    const double diag = std::sqrt(s.width * s.width + s.height * s.height);
    const double sigma = 0.15 * diag;
    auto gaussian_around = [&](const Point2& c) {
        for (int i = 0; i < kMaxPlacementAttempts; ++i) {
            const double gx = rng.gaussian();
            const double gy = rng.gaussian();
            const Point2 p(c.x + sigma * gx, c.y + sigma * gy);
            if (in_bounds(p, s.width, s.height)) return p;
        }
        throw GenerationFailed("generate_scenario: truncated gaussian never landed in bounds");
    };
    switch (kind) {
        case ScenarioKind::S1:
            if (rng.uniform01() < 0.8) return gaussian_around(s.source);
            return Point2(rng.uniform(0.0, s.width), rng.uniform(0.0, s.height));
        case ScenarioKind::S2:
        case ScenarioKind::S3: {
            // corridor within 20% map-width of the source-destination segment
            const Point2 p(rng.uniform(0.0, s.width), rng.uniform(0.0, s.height));
            const Segment axis(s.source, s.destination);
            if (point_segment_distance(p, axis) <= 0.2 * s.width) return p;
            return Point2(-1.0, -1.0);  // out of bounds, forces a retry
        }
        case ScenarioKind::S4:
            return Point2(rng.uniform(0.0, s.width), rng.uniform(0.0, s.height));
        case ScenarioKind::S5:
            return gaussian_around(Point2(0.5 * s.width, 0.5 * s.height));
        case ScenarioKind::S6: {
            const Point2 centers[3] = {s.source, Point2(0.5 * s.width, 0.5 * s.height),
                                       s.destination};
            return gaussian_around(centers[index % 3]);
        }
        case ScenarioKind::Custom: break;
    }
    throw GenerationFailed("generate_scenario: kind Custom has no generator");
}

}  // namespace

Scenario generate_scenario(ScenarioKind kind, uint64_t seed, const ScenarioParams& params) {
    if (kind == ScenarioKind::Custom)
        throw GenerationFailed("generate_scenario: kind Custom has no generator");
    Scenario s;
    s.width = params.width;
    s.height = params.height;
    s.seed = seed;
    // endpoints at opposite corners, offset 5% inward
    s.source = Point2(0.05 * s.width, 0.05 * s.height);
    s.destination = Point2(0.95 * s.width, 0.95 * s.height);

    const int count = params.obstacle_count.value_or(kind_obstacle_count(kind));
    s.kind = (count == kind_obstacle_count(kind)) ? kind : ScenarioKind::Custom;

    const double r = params.obstacle_radius;
    Rng rng(seed);
    s.obstacles.reserve(static_cast<size_t>(count));
    for (int i = 0; i < count; ++i) {
        int attempts = 0;
        for (;;) {
            if (++attempts > kMaxPlacementAttempts)
                throw GenerationFailed("generate_scenario: could not place obstacle " +
                                       std::to_string(i) + " after " +
                                       std::to_string(kMaxPlacementAttempts) + " attempts");
            const Point2 c = draw_center(kind, i, s, rng);
            if (!in_bounds(c, s.width, s.height)) continue;
            // keep clear of source/destination inflated by one disc radius
            if (euclidean_distance(c, s.source) <= 2.0 * r) continue;
            if (euclidean_distance(c, s.destination) <= 2.0 * r) continue;
            s.obstacles.emplace_back(c, r);
            break;
        }
    }
    validate_scenario(s);
    return s;
}

std::string serialize_scenario(const Scenario& s) {
    std::ostringstream out;
    out << "{\n";
    out << "  \"version\": 1,\n";
    out << "  \"kind\": \"" << to_string(s.kind) << "\",\n";
    out << "  \"seed\": " << s.seed << ",\n";
    out << "  \"map\": {\"width\": " << fmt_real(s.width) << ", \"height\": " << fmt_real(s.height)
        << "},\n";
    out << "  \"source\": {\"x\": " << fmt_real(s.source.x) << ", \"y\": " << fmt_real(s.source.y)
        << "},\n";
    out << "  \"destination\": {\"x\": " << fmt_real(s.destination.x)
        << ", \"y\": " << fmt_real(s.destination.y) << "},\n";
    out << "  \"obstacles\": [";
    for (size_t i = 0; i < s.obstacles.size(); ++i) {
        out << (i == 0 ? "\n" : ",\n");
        out << "    {\"x\": " << fmt_real(s.obstacles[i].center.x)
            << ", \"y\": " << fmt_real(s.obstacles[i].center.y)
            << ", \"r\": " << fmt_real(s.obstacles[i].radius) << "}";
    }
    out << (s.obstacles.empty() ? "]\n" : "\n  ]\n");
    out << "}\n";
    return out.str();
}

namespace {

using nlohmann::json;

int line_of_byte(const std::string& text, size_t byte) {
    int line = 1;
    for (size_t i = 0; i < byte && i < text.size(); ++i)
        if (text[i] == '\n') ++line;
    return line;
}

void reject_unknown_keys(const json& obj, std::initializer_list<const char*> allowed,
                         const std::string& where) {
    for (auto it = obj.begin(); it != obj.end(); ++it) {
        bool known = false;
        for (const char* k : allowed)
            if (it.key() == k) known = true;
        if (!known) throw ParseError(where + ": unknown field \"" + it.key() + "\"");
    }
}

double require_number(const json& obj, const char* key, const std::string& where) {
    if (!obj.contains(key)) throw ParseError(where + ": missing field \"" + key + "\"");
    if (!obj[key].is_number()) throw ParseError(where + "." + key + ": expected a number");
    return obj[key].get<double>();
}

}  // namespace

Scenario parse_scenario(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError(std::string("scenario: ") + e.what(), line_of_byte(text, e.byte));
    }
    if (!doc.is_object()) throw ParseError("scenario: top level must be an object");
    reject_unknown_keys(doc, {"version", "kind", "seed", "map", "source", "destination", "obstacles"},
                        "scenario");

    if (!doc.contains("version") || !doc["version"].is_number_integer() ||
        doc["version"].get<int>() != 1)
        throw ParseError("scenario.version: must be the integer 1");
    if (!doc.contains("kind") || !doc["kind"].is_string())
        throw ParseError("scenario.kind: expected a string");
    const auto kind = parse_kind(doc["kind"].get<std::string>());
    if (!kind)
        throw ParseError("scenario.kind: \"" + doc["kind"].get<std::string>() +
                         "\" is not one of S1..S6, Custom");
    if (!doc.contains("seed") || !doc["seed"].is_number_unsigned())
        throw ParseError("scenario.seed: expected an unsigned integer");
    if (!doc.contains("map") || !doc["map"].is_object())
        throw ParseError("scenario.map: expected an object");
    reject_unknown_keys(doc["map"], {"width", "height"}, "scenario.map");
    if (!doc.contains("obstacles") || !doc["obstacles"].is_array())
        throw ParseError("scenario.obstacles: expected an array");

    Scenario s;
    s.kind = *kind;
    s.seed = doc["seed"].get<uint64_t>();
    s.width = require_number(doc["map"], "width", "scenario.map");
    s.height = require_number(doc["map"], "height", "scenario.map");

    auto parse_point = [&](const char* key) {
        if (!doc.contains(key) || !doc[key].is_object())
            throw ParseError(std::string("scenario.") + key + ": expected an object");
        reject_unknown_keys(doc[key], {"x", "y"}, std::string("scenario.") + key);
        const double x = require_number(doc[key], "x", std::string("scenario.") + key);
        const double y = require_number(doc[key], "y", std::string("scenario.") + key);
        if (!std::isfinite(x) || !std::isfinite(y))
            throw ValidationError(std::string(key) + ": coordinates must be finite");
        return Point2(x, y);
    };
    s.source = parse_point("source");
    s.destination = parse_point("destination");

    const json& obs = doc["obstacles"];
    s.obstacles.reserve(obs.size());
    for (size_t i = 0; i < obs.size(); ++i) {
        const std::string where = "scenario.obstacles[" + std::to_string(i) + "]";
        if (!obs[i].is_object()) throw ParseError(where + ": expected an object");
        reject_unknown_keys(obs[i], {"x", "y", "r"}, where);
        const double x = require_number(obs[i], "x", where);
        const double y = require_number(obs[i], "y", where);
        const double r = require_number(obs[i], "r", where);
        if (!std::isfinite(x) || !std::isfinite(y))
            throw ValidationError(where + ": center must be finite");
        if (!(r > 0.0) || !std::isfinite(r))
            throw ValidationError(where + ": radius must be positive and finite");
        s.obstacles.emplace_back(Point2(x, y), r);
    }

    validate_scenario(s);
    return s;
}

void save_scenario(const Scenario& s, const std::string& file_path) {
    std::ofstream out(file_path, std::ios::binary);
    if (!out) throw std::runtime_error("save_scenario: cannot open " + file_path);
    out << serialize_scenario(s);
    if (!out) throw std::runtime_error("save_scenario: write failed for " + file_path);
}

Scenario load_scenario(const std::string& file_path) {
    std::ifstream in(file_path, std::ios::binary);
    if (!in) throw ParseError("load_scenario: cannot open " + file_path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_scenario(buf.str());
}

std::string scenario_digest(const Scenario& s) {
    const std::string text = serialize_scenario(s);
    uint64_t h = 0xcbf29ce484222325ULL;  // FNV-1a 64
    for (unsigned char c : text) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    char buf[20];
    std::snprintf(buf, sizeof(buf), "%016" PRIx64, h);
    return buf;
}

}  // namespace sectorplan

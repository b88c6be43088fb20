#include "sectorplan/render.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

#include "sectorplan/errors.hpp"

namespace sectorplan {

namespace {

std::string num(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.3f", v);
    return buf;
}

}  // namespace

std::string render_svg(const PlanResult& result, const Scenario& s, const RenderOptions& opts) {
    if (result.scenario_digest != scenario_digest(s))
        throw DigestMismatch("render_svg: result was produced from a different scenario (" +
                             result.scenario_digest + " vs " + scenario_digest(s) + ")");

    const double H = s.height;
    auto fy = [&](double y) { return H - y; };  // world y-up to image y-down

    std::ostringstream out;
    out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << num(s.width)
        << "\" height=\"" << num(s.height) << "\" viewBox=\"0 0 " << num(s.width) << " "
        << num(s.height) << "\">\n";
    out << "<rect id=\"frame\" x=\"0\" y=\"0\" width=\"" << num(s.width) << "\" height=\""
        << num(s.height) << "\" fill=\"#ffffff\" stroke=\"#000000\" stroke-width=\"1\"/>\n";

    out << "<g id=\"obstacles\" fill=\"#9e9e9e\" stroke=\"none\">\n";
    for (const Disc& d : s.obstacles)
        out << "<circle cx=\"" << num(d.center.x) << "\" cy=\"" << num(fy(d.center.y)) << "\" r=\""
            << num(d.radius) << "\"/>\n";
    out << "</g>\n";

    if (opts.draw_tree && result.tree.size() > 0) {
        out << "<g id=\"tree\" stroke=\"#aac4e0\" stroke-width=\"0.7\">\n";
        for (int i = 0; i < result.tree.size(); ++i) {
            const auto& v = result.tree.vertex(i);
            if (v.parent < 0) continue;
            const auto& p = result.tree.vertex(v.parent);
            out << "<line x1=\"" << num(p.position.x) << "\" y1=\"" << num(fy(p.position.y))
                << "\" x2=\"" << num(v.position.x) << "\" y2=\"" << num(fy(v.position.y))
                << "\"/>\n";
        }
        out << "</g>\n";
    }

    if (opts.draw_sector && result.final_sector) {
        const Sector& sec = *result.final_sector;
        out << "<g id=\"sector\" fill=\"none\" stroke=\"#2e8b57\" stroke-width=\"1.5\" "
               "stroke-dasharray=\"6 4\">\n";
        const double ax = sec.apex.x, ay = fy(sec.apex.y);
        if (sec.half_angle >= kPi - 1e-12) {
            out << "<circle cx=\"" << num(ax) << "\" cy=\"" << num(ay) << "\" r=\""
                << num(sec.length) << "\"/>\n";
        } else if (sec.half_angle <= 1e-12) {
            out << "<line x1=\"" << num(ax) << "\" y1=\"" << num(ay) << "\" x2=\""
                << num(sec.apex.x + sec.length * std::cos(sec.heading)) << "\" y2=\""
                << num(fy(sec.apex.y + sec.length * std::sin(sec.heading))) << "\"/>\n";
        } else {
            const double a0 = sec.heading - sec.half_angle;
            const double a1 = sec.heading + sec.half_angle;
            const double x0 = sec.apex.x + sec.length * std::cos(a0);
            const double y0 = sec.apex.y + sec.length * std::sin(a0);
            const double x1 = sec.apex.x + sec.length * std::cos(a1);
            const double y1 = sec.apex.y + sec.length * std::sin(a1);
            const int large_arc = sec.half_angle > kPi / 2.0 ? 1 : 0;
            // world counterclockwise becomes sweep=0 under the y flip
            out << "<path d=\"M " << num(ax) << " " << num(ay) << " L " << num(x0) << " "
                << num(fy(y0)) << " A " << num(sec.length) << " " << num(sec.length) << " 0 "
                << large_arc << " 0 " << num(x1) << " " << num(fy(y1)) << " Z\"/>\n";
        }
        out << "</g>\n";
    }

    if (result.path) {
        out << "<polyline id=\"path\" fill=\"none\" stroke=\"#d9331f\" stroke-width=\"2.5\" "
               "points=\"";
        for (size_t i = 0; i < result.path->waypoints.size(); ++i) {
            if (i) out << " ";
            out << num(result.path->waypoints[i].x) << "," << num(fy(result.path->waypoints[i].y));
        }
        out << "\"/>\n";
    }

    out << "<circle id=\"source\" cx=\"" << num(s.source.x) << "\" cy=\"" << num(fy(s.source.y))
        << "\" r=\"6\" fill=\"#1f77b4\"/>\n";
    out << "<circle id=\"destination\" cx=\"" << num(s.destination.x) << "\" cy=\""
        << num(fy(s.destination.y)) << "\" r=\"6\" fill=\"#2ca02c\"/>\n";
    out << "</svg>\n";
    return out.str();
}

}  // namespace sectorplan

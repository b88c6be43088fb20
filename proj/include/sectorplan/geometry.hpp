#pragma once

#include <cmath>
#include <stdexcept>

#include "sectorplan/errors.hpp"

namespace sectorplan {

inline constexpr double kPi = 3.14159265358979323846;

/// Wrap an angle into [-pi, pi).
inline double normalize_angle(double a) {
    a = std::remainder(a, 2.0 * kPi);  // lands in [-pi, pi]
    if (a >= kPi) a -= 2.0 * kPi;
    return a;
}

/// A configuration in the 2D workspace. Coordinates must be finite.
struct Point2 {
    double x = 0.0;
    double y = 0.0;

    Point2() = default;
    Point2(double px, double py) : x(px), y(py) {
        if (!std::isfinite(px) || !std::isfinite(py))
            throw std::invalid_argument("Point2: coordinates must be finite");
    }

    bool operator==(const Point2& o) const { return x == o.x && y == o.y; }
    bool operator!=(const Point2& o) const { return !(*this == o); }
};

/// Closed disc obstacle.
struct Disc {
    Point2 center;
    double radius = 1.0;

    Disc() = default;
    Disc(Point2 c, double r) : center(c), radius(r) {
        if (!(r > 0.0) || !std::isfinite(r))
            throw std::invalid_argument("Disc: radius must be positive and finite");
    }
};

/// Closed segment between two points; zero length degenerates to a point.
struct Segment {
    Point2 a;
    Point2 b;

    Segment() = default;
    Segment(Point2 pa, Point2 pb) : a(pa), b(pb) {}
};

/// Angle-bounded sampling region: apex, center direction, half-angle, length.
/// half_angle == pi degenerates to a full disc of the given length.
struct Sector {
    Point2 apex;
    double heading = 0.0;     // radians in [-pi, pi)
    double half_angle = 0.0;  // radians in [0, pi]
    double length = 0.0;      // >= 0, workspace units

    Sector() = default;
    Sector(Point2 ap, double hd, double half, double len)
        : apex(ap), heading(normalize_angle(hd)), half_angle(half), length(len) {
        if (!(half >= 0.0 && half <= kPi) || !std::isfinite(half))
            throw std::invalid_argument("Sector: half_angle must lie in [0, pi]");
        if (!(len >= 0.0) || !std::isfinite(len))
            throw std::invalid_argument("Sector: length must be >= 0 and finite");
    }
};

inline double euclidean_distance(const Point2& a, const Point2& b) {
    const double dx = b.x - a.x;
    const double dy = b.y - a.y;
    return std::sqrt(dx * dx + dy * dy);
}

inline double squared_distance(const Point2& a, const Point2& b) {
    const double dx = b.x - a.x;
    const double dy = b.y - a.y;
    return dx * dx + dy * dy;
}

/// Principal angle of the vector (to - from), in [-pi, pi).
/// Throws ZeroVector when from == to.
inline double angle_of(const Point2& from, const Point2& to) {
    if (from == to) throw ZeroVector("angle_of: identical points have no direction");
    return normalize_angle(std::atan2(to.y - from.y, to.x - from.x));
}

/// Minimum distance from p to the closed segment s (exact, not sampled).
inline double point_segment_distance(const Point2& p, const Segment& s) {
    const double vx = s.b.x - s.a.x;
    const double vy = s.b.y - s.a.y;
    const double len2 = vx * vx + vy * vy;
    if (len2 == 0.0) return euclidean_distance(p, s.a);
    double t = ((p.x - s.a.x) * vx + (p.y - s.a.y) * vy) / len2;
    if (t < 0.0) t = 0.0;
    if (t > 1.0) t = 1.0;
    const Point2 proj(s.a.x + t * vx, s.a.y + t * vy);
    return euclidean_distance(p, proj);
}

/// True iff the segment touches or enters the disc. Boundary contact counts
/// as collision.
inline bool segment_hits_disc(const Segment& s, const Disc& d) {
    return point_segment_distance(d.center, s) <= d.radius;
}

/// Closed sector membership: within length of the apex and within half_angle
/// of the heading. The apex itself is always inside.
inline bool point_in_sector(const Point2& p, const Sector& s) {
    if (euclidean_distance(p, s.apex) > s.length) return false;
    if (p == s.apex) return true;  // angular deviation of the zero vector is 0
    const double ang = angle_of(s.apex, p);
    const double dev = std::fabs(normalize_angle(ang - s.heading));
    return dev <= s.half_angle;
}

}  // namespace sectorplan

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "sectorplan/geometry.hpp"
#include "sectorplan/rng.hpp"
#include "oracles.hpp"

using namespace sectorplan;

TEST_CASE("euclidean_distance basics") {
    CHECK(euclidean_distance({0, 0}, {3, 4}) == 5.0);
    CHECK(euclidean_distance({7, -2}, {7, -2}) == 0.0);
    // (1,1)-(4,5) is another 3-4-5 triangle; exact in binary64
    CHECK(euclidean_distance({1, 1}, {4, 5}) == 5.0);
}

TEST_CASE("distance symmetry, identity and triangle inequality") {
    Rng rng(101);
    for (int i = 0; i < 2000; ++i) {
        const Point2 a(rng.uniform(-100, 100), rng.uniform(-100, 100));
        const Point2 b(rng.uniform(-100, 100), rng.uniform(-100, 100));
        const Point2 c(rng.uniform(-100, 100), rng.uniform(-100, 100));
        CHECK(euclidean_distance(a, b) == euclidean_distance(b, a));
        const double lhs = euclidean_distance(a, c);
        const double rhs = euclidean_distance(a, b) + euclidean_distance(b, c);
        CHECK(lhs <= rhs + 1e-9 * std::max(1.0, rhs));
    }
    CHECK(euclidean_distance({2, 3}, {2, 3}) == 0.0);
    CHECK(euclidean_distance({2, 3}, {2, 3.0000001}) > 0.0);
}

TEST_CASE("Point2 rejects non-finite coordinates") {
    CHECK_THROWS_AS(Point2(std::nan(""), 0.0), std::invalid_argument);
    CHECK_THROWS_AS(Point2(0.0, std::numeric_limits<double>::infinity()), std::invalid_argument);
    CHECK_THROWS_AS(Disc({0, 0}, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(Disc({0, 0}, -2.0), std::invalid_argument);
}

TEST_CASE("segment_hits_disc known cases") {
    CHECK(segment_hits_disc({{-1, 0}, {1, 0}}, {{0, 0}, 0.5}));
    CHECK_FALSE(segment_hits_disc({{10, 10}, {11, 10}}, {{0, 0}, 1.0}));
    // tangent contact counts as a hit; closed-form clearance is exactly 1
    CHECK(point_segment_distance({0, 0}, {{-1, 1}, {1, 1}}) == 1.0);
    CHECK(segment_hits_disc({{-1, 1}, {1, 1}}, {{0, 0}, 1.0}));
    CHECK(oracle::dense_segment_disc_hit({{-1, 1}, {1, 1}}, {{0, 0}, 1.0}));
}

TEST_CASE("segment_hits_disc degenerate zero-length segment") {
    CHECK(segment_hits_disc({{1, 1}, {1, 1}}, {{1, 1}, 0.5}));
    CHECK(segment_hits_disc({{1.5, 1}, {1.5, 1}}, {{1, 1}, 0.5}));  // on the boundary
    CHECK_FALSE(segment_hits_disc({{2, 1}, {2, 1}}, {{1, 1}, 0.5}));
}

TEST_CASE("segment_hits_disc agrees with dense-sampling oracle") {
    // unit-ish scale keeps the sampler's resolution far inside the 1e-6
    // exclusion band, so agreement is guaranteed rather than probabilistic
    Rng rng(7);
    int tested = 0;
    while (tested < 10000) {
        const Segment s({rng.uniform(0, 10), rng.uniform(0, 10)},
                        {rng.uniform(0, 10), rng.uniform(0, 10)});
        const Disc d({rng.uniform(0, 10), rng.uniform(0, 10)}, rng.uniform(0.3, 3.0));
        const double clearance = point_segment_distance(d.center, s);
        if (std::fabs(clearance - d.radius) < 1e-6) continue;  // regenerate near-tangent pairs
        ++tested;
        CHECK(segment_hits_disc(s, d) == oracle::dense_segment_disc_hit(s, d));
    }
}

TEST_CASE("angle_of quadrants") {
    CHECK(angle_of({0, 0}, {1, 0}) == 0.0);
    CHECK(angle_of({0, 0}, {0, 1}) == doctest::Approx(kPi / 2).epsilon(1e-15));
    CHECK(angle_of({2, 2}, {1, 1}) == doctest::Approx(-3 * kPi / 4).epsilon(1e-15));
    CHECK_THROWS_AS(angle_of({3, 3}, {3, 3}), ZeroVector);

    // brute-force table of the 8 compass directions
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    const struct { double dx, dy, expect; } table[] = {
        {1, 0, 0.0},
        {inv_sqrt2, inv_sqrt2, kPi / 4},
        {0, 1, kPi / 2},
        {-inv_sqrt2, inv_sqrt2, 3 * kPi / 4},
        {-1, 0, -kPi},  // principal range is [-pi, pi)
        {-inv_sqrt2, -inv_sqrt2, -3 * kPi / 4},
        {0, -1, -kPi / 2},
        {inv_sqrt2, -inv_sqrt2, -kPi / 4},
    };
    for (const auto& row : table)
        CHECK(angle_of({0, 0}, {row.dx, row.dy}) == doctest::Approx(row.expect).epsilon(1e-14));
}

TEST_CASE("normalize_angle principal range") {
    Rng rng(3);
    for (int i = 0; i < 1000; ++i) {
        const double a = rng.uniform(-50, 50);
        const double n = normalize_angle(a);
        CHECK(n >= -kPi);
        CHECK(n < kPi);
        // same direction modulo 2*pi
        CHECK(std::fabs(std::remainder(a - n, 2 * kPi)) < 1e-9);
    }
}

TEST_CASE("point_in_sector membership") {
    const Sector s({0, 0}, 0.0, kPi / 4, 10.0);
    CHECK(point_in_sector(s.apex, s));
    CHECK(point_in_sector({5, 0}, s));
    // atan2(5.01, 5) = 0.78640 > pi/4 = 0.78540, so just outside the edge
    CHECK_FALSE(point_in_sector({5, 5.01}, s));
    CHECK(point_in_sector({5, 4.99}, s));
    CHECK_FALSE(point_in_sector({11, 0}, s));  // beyond the length
}

TEST_CASE("sector construction validation") {
    CHECK_THROWS_AS(Sector({0, 0}, 0.0, -0.1, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(Sector({0, 0}, 0.0, kPi + 0.1, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(Sector({0, 0}, 0.0, 0.5, -1.0), std::invalid_argument);
    // heading is normalized into [-pi, pi)
    CHECK(Sector({0, 0}, 3 * kPi, 0.5, 1.0).heading == doctest::Approx(-kPi).epsilon(1e-15));
}

TEST_CASE("full sector equals disc membership") {
    Rng rng(11);
    for (int i = 0; i < 5000; ++i) {
        const Point2 apex(rng.uniform(-10, 10), rng.uniform(-10, 10));
        const double len = rng.uniform(0.1, 20.0);
        const Sector s(apex, rng.uniform(-kPi, kPi), kPi, len);
        const Point2 p(rng.uniform(-30, 30), rng.uniform(-30, 30));
        CHECK(point_in_sector(p, s) == (euclidean_distance(p, apex) <= len));
    }
}

TEST_CASE("sector membership invariant under rigid rotation") {
    Rng rng(13);
    int tested = 0;
    while (tested < 5000) {
        const Point2 apex(rng.uniform(-5, 5), rng.uniform(-5, 5));
        const double heading = rng.uniform(-kPi, kPi);
        const double half = rng.uniform(0.0, kPi);
        const double len = rng.uniform(0.5, 15.0);
        const Sector s(apex, heading, half, len);
        const Point2 p(rng.uniform(-20, 20), rng.uniform(-20, 20));

        // skip points within 1e-9 of either boundary
        const double d = euclidean_distance(p, apex);
        if (std::fabs(d - len) < 1e-9) continue;
        if (p != apex) {
            const double dev = std::fabs(normalize_angle(angle_of(apex, p) - heading));
            if (std::fabs(dev - half) < 1e-7) continue;
        }
        ++tested;

        const double rot = rng.uniform(-kPi, kPi);
        const double cr = std::cos(rot), sr = std::sin(rot);
        auto rotate = [&](const Point2& q) {
            return Point2(cr * q.x - sr * q.y, sr * q.x + cr * q.y);
        };
        const Sector s2(rotate(apex), heading + rot, half, len);
        CHECK(point_in_sector(p, s) == point_in_sector(rotate(p), s2));
    }
}

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "sectorplan/errors.hpp"
#include "sectorplan/planner_core.hpp"
#include "oracles.hpp"

using namespace sectorplan;

namespace {

Scenario empty_scenario(double w = 1000, double h = 1000) {
    Scenario s;
    s.width = w;
    s.height = h;
    s.source = Point2(0.05 * w, 0.05 * h);
    s.destination = Point2(0.95 * w, 0.95 * h);
    return s;
}

Tree random_tree(int n, const Scenario& s, Rng& rng) {
    Tree t = initialize_tree(s.source, s.width, s.height);
    while (t.size() < n) {
        const Point2 p(rng.uniform(0, s.width), rng.uniform(0, s.height));
        const int parent = int(rng.uniform01() * t.size());
        if (t.vertex(parent).position == p) continue;
        t.insert_node(parent, p);
    }
    return t;
}

}  // namespace

TEST_CASE("initialize_tree") {
    const Tree t = initialize_tree({50, 50}, 1000, 1000);
    CHECK(t.size() == 1);
    CHECK(t.vertex(0).parent == -1);
    CHECK(t.vertex(0).cost_from_root == 0.0);
    CHECK(t.vertex(0).position == Point2(50, 50));
    CHECK(oracle::check_tree_invariants(t).empty());

    const Tree u = initialize_tree({50, 50}, 1000, 1000);
    CHECK(u.size() == t.size());
    CHECK(u.vertex(0).position == t.vertex(0).position);
}

TEST_CASE("nearest basics and tie-break") {
    Tree t = initialize_tree({0, 0}, 100, 100);
    CHECK(t.nearest({99, 99}) == 0);  // single vertex
    t.insert_node(0, {10, 0});
    CHECK(t.nearest({4, 0}) == 0);
    CHECK(t.nearest({6, 0}) == 1);
    // equidistant: lowest index wins
    CHECK(t.nearest({5, 0}) == 0);
}

TEST_CASE("nearest and near match the linear-scan oracles") {
    Rng rng(99);
    const Scenario s = empty_scenario();
    const Tree t = random_tree(1000, s, rng);
    for (int i = 0; i < 1000; ++i) {
        const Point2 q(rng.uniform(-50, 1050), rng.uniform(-50, 1050));
        CHECK(t.nearest(q) == oracle::linear_scan_nearest(t, q));
        const double radius = rng.uniform(0, 300);
        CHECK(t.near(q, radius) == oracle::linear_scan_near(t, q, radius));
    }
}

TEST_CASE("near edge cases") {
    Rng rng(5);
    const Scenario s = empty_scenario();
    Tree t = random_tree(50, s, rng);
    CHECK(t.near({123.456, 789.1}, 0.0).empty());  // radius 0 off-vertex
    const auto all = t.near({500, 500}, 2000.0);   // radius beyond the diagonal
    CHECK(int(all.size()) == t.size());
    for (int i = 0; i < t.size(); ++i) CHECK(all[size_t(i)] == i);
    // a vertex exactly on the ball boundary is included
    Tree u = initialize_tree({0, 0}, 100, 100);
    u.insert_node(0, {30, 40});
    CHECK(u.near({0, 0}, 50.0) == std::vector<int>{0, 1});
}

TEST_CASE("near_radius formula") {
    CHECK(near_radius({1.0, 2, 0.0}, 1.0) == 0.0);  // log(1) = 0
    const double e = std::exp(1.0);
    const double expect_e = std::sqrt(1.0 / e);  // (log(e)/e)^(1/2)
    CHECK(near_radius({1.0, 2, 0.0}, e) == doctest::Approx(expect_e).epsilon(1e-14));
    const double expect_100 = 500.0 * std::sqrt(std::log(100.0) / 100.0);
    CHECK(near_radius({500.0, 2, 0.0}, 100.0) == doctest::Approx(expect_100).epsilon(1e-14));
    // the floor dominates small shrink values
    CHECK(near_radius({1.0, 2, 60.0}, 1000000.0) == 60.0);
    CHECK_THROWS_AS(near_radius({1.0, 2, 0.0}, 0.5), std::invalid_argument);
}

TEST_CASE("steer") {
    CHECK(steer({0, 0}, {10, 0}, {3.0}) == Point2(3, 0));
    CHECK(steer({0, 0}, {1, 0}, {3.0}) == Point2(1, 0));  // within one step
    const Point2 p = steer({0, 0}, {3, 4}, {2.5});
    CHECK(p.x == doctest::Approx(1.5).epsilon(1e-15));
    CHECK(p.y == doctest::Approx(2.0).epsilon(1e-15));
    CHECK_THROWS_AS(steer({1, 1}, {1, 1}, {3.0}), ZeroVector);
}

TEST_CASE("edge_is_free") {
    Scenario s = empty_scenario(100, 100);
    CHECK(edge_is_free({10, 10}, {90, 90}, s));
    CHECK_FALSE(edge_is_free({10, 10}, {110, 90}, s));  // endpoint out of bounds
    s.obstacles.emplace_back(Point2(50, 50), 5.0);
    CHECK_FALSE(edge_is_free({10, 50}, {90, 50}, s));  // through the disc center
    CHECK(edge_is_free({10, 10}, {90, 10}, s));
}

TEST_CASE("edge_is_free agrees with dense sampling") {
    Rng rng(17);
    Scenario s = empty_scenario(10, 10);
    for (int i = 0; i < 6; ++i)
        s.obstacles.emplace_back(Point2(rng.uniform(1, 9), rng.uniform(1, 9)),
                                 rng.uniform(0.3, 1.5));
    int tested = 0;
    while (tested < 10000) {
        const Point2 a(rng.uniform(0, 10), rng.uniform(0, 10));
        const Point2 b(rng.uniform(0, 10), rng.uniform(0, 10));
        bool near_tangent = false;
        for (const Disc& d : s.obstacles)
            if (std::fabs(point_segment_distance(d.center, {a, b}) - d.radius) < 1e-6)
                near_tangent = true;
        if (near_tangent) continue;
        ++tested;
        bool oracle_free = true;
        for (const Disc& d : s.obstacles)
            if (oracle::dense_segment_disc_hit({a, b}, d)) oracle_free = false;
        CHECK(edge_is_free(a, b, s) == oracle_free);
    }
}

TEST_CASE("choose_parent") {
    const Scenario s = empty_scenario(100, 100);
    // 5-vertex fixture: root + chain + a shortcut candidate
    Tree t = initialize_tree({10, 10}, 100, 100);
    t.insert_node(0, {30, 10});  // 1: cost 20
    t.insert_node(1, {50, 10});  // 2: cost 40
    t.insert_node(2, {50, 30});  // 3: cost 60
    t.insert_node(0, {10, 40});  // 4: cost 30
    const Point2 new_pos(52, 32);

    SUBCASE("empty candidates fall back") {
        CHECK(choose_parent(t, {}, 3, new_pos, s) == 3);
    }
    SUBCASE("cheapest through-cost wins, verified by brute force") {
        const std::vector<int> candidates{0, 1, 2, 3, 4};
        int best = 3;
        double best_cost = t.vertex(3).cost_from_root +
                           euclidean_distance(t.vertex(3).position, new_pos);
        for (int c : candidates) {
            const double through =
                t.vertex(c).cost_from_root + euclidean_distance(t.vertex(c).position, new_pos);
            if (through < best_cost) {
                best_cost = through;
                best = c;
            }
        }
        CHECK(choose_parent(t, candidates, 3, new_pos, s) == best);
        CHECK(best == 0);  // the root's direct edge undercuts every chain
    }
    SUBCASE("a blocked cheap edge falls through to the fallback") {
        Scenario blocked = s;
        blocked.obstacles.emplace_back(Point2(51, 21), 1.5);  // sits on the 2->new edge
        CHECK(choose_parent(t, {2}, 3, new_pos, blocked) == 3);
    }
}

TEST_CASE("insert_node costs") {
    Tree t = initialize_tree({0, 0}, 100, 100);
    const int a = t.insert_node(0, {3, 4});
    CHECK(t.vertex(a).cost_from_root == 5.0);
    Tree chain = initialize_tree({0, 0}, 100, 100);
    int prev = 0;
    for (int i = 1; i <= 3; ++i) prev = chain.insert_node(prev, {double(i), 0});
    CHECK(chain.vertex(prev).cost_from_root == 3.0);
}

TEST_CASE("tree invariants hold through random inserts") {
    Rng rng(41);
    const Scenario s = empty_scenario();
    Tree t = initialize_tree(s.source, s.width, s.height);
    for (int i = 0; i < 1000; ++i) {
        const Point2 p(rng.uniform(0, s.width), rng.uniform(0, s.height));
        t.insert_node(int(rng.uniform01() * t.size()), p);
    }
    CHECK(oracle::check_tree_invariants(t).empty());
}

TEST_CASE("rewire") {
    Scenario s = empty_scenario(100, 100);
    SUBCASE("empty near list rewires nothing") {
        Tree t = initialize_tree({0, 0}, 100, 100);
        t.insert_node(0, {10, 0});
        CHECK(rewire(t, {}, 1, s) == 0);
    }
    SUBCASE("cheaper route reparents and the exact delta propagates") {
        // root -> detour -> v -> leaf, then a new vertex near v offers a shortcut
        Tree t = initialize_tree({0, 0}, 100, 100);
        const int detour = t.insert_node(0, {0, 30});      // cost 30
        const int v = t.insert_node(detour, {20, 30});     // cost 50
        const int leaf = t.insert_node(v, {20, 40});       // cost 60
        const int fresh = t.insert_node(0, {18, 24});      // cost 30
        const double v_old = t.vertex(v).cost_from_root;
        const double leaf_old = t.vertex(leaf).cost_from_root;

        CHECK(rewire(t, {detour, v}, fresh, s) == 1);
        CHECK(t.vertex(v).parent == fresh);
        const double v_expected = t.vertex(fresh).cost_from_root +
                                  euclidean_distance(t.vertex(fresh).position, t.vertex(v).position);
        CHECK(t.vertex(v).cost_from_root == v_expected);
        CHECK(t.vertex(v).cost_from_root < v_old);
        // subtree cost recomputed by a root walk
        const double leaf_expected = t.vertex(v).cost_from_root +
                                     euclidean_distance(t.vertex(v).position, t.vertex(leaf).position);
        CHECK(t.vertex(leaf).cost_from_root == leaf_expected);
        CHECK(t.vertex(leaf).cost_from_root < leaf_old);
        CHECK(oracle::check_tree_invariants(t).empty());
    }
    SUBCASE("a cheaper but blocked edge is not rewired") {
        Tree t = initialize_tree({0, 0}, 100, 100);
        const int detour = t.insert_node(0, {0, 30});
        const int v = t.insert_node(detour, {20, 30});
        const int fresh = t.insert_node(0, {18, 24});
        Scenario blocked = s;
        blocked.obstacles.emplace_back(Point2(19, 27), 1.0);  // on the fresh->v edge
        CHECK(rewire(t, {v}, fresh, blocked) == 0);
        CHECK(t.vertex(v).parent == detour);
    }
}

TEST_CASE("rewire never increases any cost") {
    Rng rng(4242);
    const Scenario s = empty_scenario(200, 200);
    Tree t = initialize_tree({10, 10}, 200, 200);
    NearParams np{150.0, 2, 20.0};
    for (int i = 0; i < 400; ++i) {
        const Point2 sample(rng.uniform(0, 200), rng.uniform(0, 200));
        std::vector<double> before;
        for (int v = 0; v < t.size(); ++v) before.push_back(t.vertex(v).cost_from_root);
        extend_tree(t, sample, s, 25.0, np);
        for (size_t v = 0; v < before.size(); ++v)
            CHECK(t.vertex(int(v)).cost_from_root <= before[v]);
    }
    CHECK(oracle::check_tree_invariants(t).empty());
}

TEST_CASE("plan_rrt_star finds a near-straight path on an empty map") {
    const Scenario s = empty_scenario();
    const double straight = euclidean_distance(s.source, s.destination);
    for (uint64_t seed = 0; seed < 20; ++seed) {
        PlannerConfig cfg;
        cfg.max_iterations = 5000;
        cfg.step = 30.0;
        cfg.seed = seed;
        const PlanResult r = plan_rrt_star(s, cfg);
        REQUIRE(r.success);
        CHECK(*r.total_path_cost <= 1.5 * straight);
        CHECK(*r.total_path_cost >= straight - cfg.goal_radius);
    }
}

TEST_CASE("plan_rrt_star reports failure through a solid ring") {
    Scenario s = empty_scenario(400, 400);
    // overlapping discs encircling the destination
    const Point2 center = s.destination;
    for (int i = 0; i < 16; ++i) {
        const double a = 2.0 * kPi * i / 16;
        s.obstacles.emplace_back(
            Point2(center.x + 60 * std::cos(a), center.y + 60 * std::sin(a)), 14.0);
    }
    PlannerConfig cfg;
    cfg.max_iterations = 800;
    cfg.step = 20.0;
    cfg.goal_radius = 10.0;
    const PlanResult r = plan_rrt_star(s, cfg);
    CHECK_FALSE(r.success);
    CHECK(r.node_count > 0);       // metrics still populated
    CHECK(!r.total_path_cost);
    CHECK(r.best_cost_trace.empty());
}

TEST_CASE("plan_rrt_star is deterministic for a fixed seed") {
    Scenario s = empty_scenario();
    s.obstacles.emplace_back(Point2(500, 500), 40.0);
    PlannerConfig cfg;
    cfg.max_iterations = 1500;
    cfg.seed = 321;
    const PlanResult a = plan_rrt_star(s, cfg);
    const PlanResult b = plan_rrt_star(s, cfg);
    REQUIRE(a.node_count == b.node_count);
    for (int i = 0; i < a.tree.size(); ++i) {
        CHECK(a.tree.vertex(i).position == b.tree.vertex(i).position);
        CHECK(a.tree.vertex(i).parent == b.tree.vertex(i).parent);
        CHECK(a.tree.vertex(i).cost_from_root == b.tree.vertex(i).cost_from_root);
    }
    CHECK(a.success == b.success);
    CHECK(a.total_path_cost == b.total_path_cost);
    CHECK(a.best_cost_trace.size() == b.best_cost_trace.size());
}

TEST_CASE("best-cost trace is non-increasing and edges re-validate") {
    Scenario s = empty_scenario();
    s.obstacles.emplace_back(Point2(300, 300), 50.0);
    s.obstacles.emplace_back(Point2(600, 700), 60.0);
    PlannerConfig cfg;
    cfg.max_iterations = 3000;
    cfg.seed = 9;
    const PlanResult r = plan_rrt_star(s, cfg);
    REQUIRE(r.success);
    for (size_t i = 1; i < r.best_cost_trace.size(); ++i)
        CHECK(r.best_cost_trace[i].cost < r.best_cost_trace[i - 1].cost);
    for (int v = 1; v < r.tree.size(); ++v)
        CHECK(edge_is_free(r.tree.vertex(r.tree.vertex(v).parent).position,
                           r.tree.vertex(v).position, s));
    CHECK(oracle::check_tree_invariants(r.tree).empty());
}

TEST_CASE("tree restore round-trips structure and costs") {
    Rng rng(88);
    const Scenario s = empty_scenario();
    const Tree t = random_tree(200, s, rng);
    std::vector<std::pair<Point2, int>> raw;
    for (int i = 0; i < t.size(); ++i)
        raw.emplace_back(t.vertex(i).position, t.vertex(i).parent);
    const Tree back = Tree::restore(raw, s.width, s.height);
    REQUIRE(back.size() == t.size());
    for (int i = 0; i < t.size(); ++i) {
        CHECK(back.vertex(i).position == t.vertex(i).position);
        CHECK(back.vertex(i).parent == t.vertex(i).parent);
        CHECK(back.vertex(i).cost_from_root == t.vertex(i).cost_from_root);
    }
    CHECK(oracle::check_tree_invariants(back).empty());
}

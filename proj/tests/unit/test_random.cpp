#include <catch2/catch_amalgamated.hpp>

#include "defectforge/random.hpp"

using namespace defectforge;

TEST_CASE("same seed reproduces the exact sample sequence") {
    RandomStream a(1234), b(1234);
    for (int i = 0; i < 200; ++i) REQUIRE(a.next_u64() == b.next_u64());
}

TEST_CASE("distinct stream ids never share state") {
    RandomStream a(99, 0), b(99, 1);
    int equal = 0;
    for (int i = 0; i < 64; ++i) {
        if (a.next_u64() == b.next_u64()) ++equal;
    }
    REQUIRE(equal == 0);
    RandomStream c(99, 0);
    RandomStream d = c.split(1);
    RandomStream e(99, 1);
    for (int i = 0; i < 16; ++i) REQUIRE(d.next_u64() == e.next_u64());
}

TEST_CASE("uniform_points stays inside the region and is reproducible") {
    Rect unit{0.0, 1.0, 0.0, 1.0};
    RandomStream s1(1);
    auto pts = uniform_points(s1, unit, 3);
    REQUIRE(pts.size() == 3);
    for (const Vec2& p : pts) {
        REQUIRE(p.x >= 0.0);
        REQUIRE(p.x <= 1.0);
        REQUIRE(p.y >= 0.0);
        REQUIRE(p.y <= 1.0);
    }
    RandomStream s2(1);
    auto pts2 = uniform_points(s2, unit, 3);
    for (std::size_t i = 0; i < pts.size(); ++i) {
        REQUIRE(pts[i].x == pts2[i].x);
        REQUIRE(pts[i].y == pts2[i].y);
    }
}

TEST_CASE("uniform_points consumes exactly 2n draws") {
    Rect unit{0.0, 1.0, 0.0, 1.0};
    RandomStream s(77);
    uniform_points(s, unit, 25);
    RandomStream ref(77);
    for (int i = 0; i < 50; ++i) ref.next_u64();
    REQUIRE(s.next_u64() == ref.next_u64());
}

TEST_CASE("uniform_points empirical mean matches the region center") {
    // law-of-large-numbers oracle on [0,2] x [0,1]
    Rect region{0.0, 2.0, 0.0, 1.0};
    RandomStream s(7);
    auto pts = uniform_points(s, region, 10000);
    Vec2 mean{0.0, 0.0};
    for (const Vec2& p : pts) mean += p;
    mean = mean / static_cast<double>(pts.size());
    REQUIRE(std::abs(mean.x - 1.0) < 0.05);
    REQUIRE(std::abs(mean.y - 0.5) < 0.05);
}

TEST_CASE("uniform_points rejects empty and degenerate requests") {
    Rect unit{0.0, 1.0, 0.0, 1.0};
    Rect flat{0.0, 1.0, 0.5, 0.5};
    RandomStream s(3);
    REQUIRE_THROWS_AS(uniform_points(s, unit, 0), EmptyRequest);
    REQUIRE_THROWS_AS(uniform_points(s, flat, 4), InvalidRegion);
}

TEST_CASE("uniform_in_polygon samples strictly inside") {
    Polygon square{{0, 0}, {1, 0}, {1, 1}, {0, 1}};
    RandomStream s(11);
    auto pts = uniform_in_polygon(s, square, 5);
    REQUIRE(pts.size() == 5);
    for (const Vec2& p : pts) {
        REQUIRE(p.x > 0.0);
        REQUIRE(p.x < 1.0);
        REQUIRE(p.y > 0.0);
        REQUIRE(p.y < 1.0);
    }
}

TEST_CASE("uniform_in_polygon centroid oracle on a triangle") {
    Polygon tri{{0, 0}, {1, 0}, {0, 1}};
    RandomStream s(3);
    auto pts = uniform_in_polygon(s, tri, 10000);
    Vec2 mean{0.0, 0.0};
    for (const Vec2& p : pts) mean += p;
    mean = mean / static_cast<double>(pts.size());
    REQUIRE(std::abs(mean.x - 1.0 / 3.0) < 0.02);
    REQUIRE(std::abs(mean.y - 1.0 / 3.0) < 0.02);
}

TEST_CASE("uniform_in_polygon vacuous and degenerate cases") {
    Polygon tri{{0, 0}, {1, 0}, {0, 1}};
    RandomStream s(3);
    REQUIRE(uniform_in_polygon(s, tri, 0).empty());
    Polygon line{{0, 0}, {1, 0}, {2, 0}};
    REQUIRE_THROWS_AS(uniform_in_polygon(s, line, 1), InvalidRegion);
}

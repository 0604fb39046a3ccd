#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "defectforge/dilation.hpp"

using namespace defectforge;

namespace {

Path make_path(std::initializer_list<Vec2> pts) {
    Path p;
    p.vertices = pts;
    return p;
}

bool contour_contains_vertex(const SideDilation& side, const Vec2& v, double tol) {
    for (const Vec2& p : side.contour) {
        if (distance(p, v) <= tol) return true;
    }
    return false;
}

} // namespace

TEST_CASE("single horizontal arc dilates to a rectangle") {
    Path p = make_path({{0.0, 0.0}, {1.0, 0.0}});
    DilatedPath d = dilate(p, {0.2}, 0.0, 1.0);

    REQUIRE(d.upper.quads.size() == 1);
    REQUIRE(polygon_area(d.upper.quads[0]) == Catch::Approx(0.2).margin(1e-12));
    REQUIRE(d.upper.arcs.size() == 1);
    REQUIRE(d.upper.arcs[0].origin == 0);
    REQUIRE(d.upper.arcs[0].edge == QuadEdge::Top);
    REQUIRE(d.upper.contour.front().x == Catch::Approx(0.0));
    REQUIRE(d.upper.contour.front().y == Catch::Approx(0.2));
    REQUIRE(d.upper.contour.back().x == Catch::Approx(1.0));
    REQUIRE(d.upper.contour.back().y == Catch::Approx(0.2));

    REQUIRE(d.lower.arcs.size() == 1);
    REQUIRE(d.lower.contour.front().y == Catch::Approx(-0.2));
    REQUIRE(d.lower.contour.back().y == Catch::Approx(-0.2));
    REQUIRE(d.upper.reflex_repairs == 0);
    REQUIRE(d.lower.reflex_repairs == 0);
}

TEST_CASE("collinear arcs with equal widths give one straight run") {
    Path p = make_path({{0.0, 0.0}, {0.5, 0.0}, {1.0, 0.0}});
    DilatedPath d = dilate(p, {0.2, 0.2}, 0.0, 1.0);
    for (const Vec2& v : d.upper.contour) REQUIRE(v.y == Catch::Approx(0.2).margin(1e-12));
    for (const Vec2& v : d.lower.contour) REQUIRE(v.y == Catch::Approx(-0.2).margin(1e-12));
    REQUIRE(d.upper.reflex_repairs == 0);
    REQUIRE(d.lower.reflex_repairs == 0);
}

TEST_CASE("V path: contour kinks sit at the offset-line intersections") {
    // downward V turns left at the kink: the upper contour vertex comes from the
    // crossing of the two offset top lines, the lower one from the reflex repair;
    // both coincide with the independent line-line solution
    const double l = 0.1;
    Path p = make_path({{0.0, 0.0}, {1.0, -1.0}, {2.0, 0.0}});
    DilatedPath d = dilate(p, {l, l}, 0.0, 2.0);

    const double s = l * std::sqrt(2.0);
    REQUIRE(contour_contains_vertex(d.upper, {1.0, -1.0 + s}, 1e-9));
    REQUIRE(contour_contains_vertex(d.lower, {1.0, -1.0 - s}, 1e-9));
    REQUIRE(d.upper.reflex_repairs == 0);
    REQUIRE(d.lower.reflex_repairs == 1);

    // start and end gaps are closed by extending the top edges to the borders
    REQUIRE(contour_contains_vertex(d.upper, {0.0, s}, 1e-9));
    REQUIRE(contour_contains_vertex(d.upper, {2.0, s}, 1e-9));
}

TEST_CASE("inter: right-angle kink with unequal widths, ray-ray branch") {
    const Vec2 junction{1.0, 0.0};
    auto res = detail::inter_offset_corner(junction, {1.0, 0.0}, 0.1, {0.0, 1.0}, {0.0, -1.0},
                                           0.3, {1.0, 0.0});
    REQUIRE_FALSE(res.fallback);
    REQUIRE(res.point.x == Catch::Approx(1.3).margin(1e-12));
    REQUIRE(res.point.y == Catch::Approx(0.1).margin(1e-12));
}

TEST_CASE("inter: shallow kink elongates the smaller edge to the lateral side") {
    // closed-form oracle: the smaller top edge at offset 0.1 meets the other
    // rectangle's lateral side at x = 1 + 0.1 * tan(theta)
    const double theta = 10.0 * 3.14159265358979323846 / 180.0;
    const Vec2 dir_j{std::cos(theta), -std::sin(theta)};
    const Vec2 n_j{std::sin(theta), std::cos(theta)};
    auto res = detail::inter_offset_corner({1.0, 0.0}, {1.0, 0.0}, 0.1, {0.0, 1.0}, dir_j, 0.3,
                                           n_j);
    REQUIRE_FALSE(res.fallback);
    REQUIRE(res.point.x == Catch::Approx(1.0 + 0.1 * std::tan(theta)).margin(1e-9));
    REQUIRE(res.point.y == Catch::Approx(0.1).margin(1e-9));
}

TEST_CASE("every quad contains its raw rectangle") {
    // coverage oracle: points sampled in the plain rectangle union stay covered
    RandomStream s(2024);
    int tested = 0;
    for (int trial = 0; trial < 20; ++trial) {
        Path p;
        double x = 0.0;
        p.vertices.push_back({0.0, s.uniform(-0.5, 0.5)});
        const int arcs = 3 + static_cast<int>(s.uniform_index(8));
        for (int i = 0; i < arcs; ++i) {
            x += s.uniform(0.2, 1.0);
            p.vertices.push_back({x, s.uniform(-0.8, 0.8)});
        }
        std::vector<double> widths;
        for (std::size_t i = 0; i < p.arc_count(); ++i) widths.push_back(s.uniform(0.05, 0.25));
        DilatedPath d = dilate(p, widths, 0.0, x);

        Box2 bb;
        for (const Vec2& v : p.vertices) bb.expand(v);
        bb.lo.y -= 0.3;
        bb.hi.y += 0.3;
        int kept = 0;
        while (kept < 500) {
            Vec2 q{s.uniform(bb.lo.x, bb.hi.x), s.uniform(bb.lo.y, bb.hi.y)};
            if (!raw_rectangles_contain(d, q)) continue;
            ++kept;
            ++tested;
            REQUIRE(dilation_contains(d, q));
        }
    }
    REQUIRE(tested == 20 * 500);
}

TEST_CASE("contours are chained, x-monotone and span the strip") {
    RandomStream s(7);
    for (int trial = 0; trial < 10; ++trial) {
        Path p;
        double x = 0.0;
        p.vertices.push_back({0.0, s.uniform(-0.5, 0.5)});
        const int arcs = 2 + static_cast<int>(s.uniform_index(10));
        for (int i = 0; i < arcs; ++i) {
            x += s.uniform(0.1, 0.8);
            p.vertices.push_back({x, s.uniform(-0.8, 0.8)});
        }
        std::vector<double> widths;
        for (std::size_t i = 0; i < p.arc_count(); ++i) widths.push_back(s.uniform(0.02, 0.3));
        DilatedPath d = dilate(p, widths, 0.0, x);
        for (const SideDilation* side : {&d.upper, &d.lower}) {
            REQUIRE(side->arcs.size() == side->contour.size() - 1);
            REQUIRE(side->contour.front().x == Catch::Approx(0.0).margin(1e-9));
            REQUIRE(side->contour.back().x == Catch::Approx(x).margin(1e-9));
            for (std::size_t i = 0; i + 1 < side->contour.size(); ++i) {
                REQUIRE(side->contour[i + 1].x >= side->contour[i].x - 1e-12);
            }
            for (const ContourArc& a : side->arcs) {
                REQUIRE(a.origin >= 0);
                REQUIRE(a.origin < static_cast<int>(p.arc_count()));
            }
        }
    }
}

TEST_CASE("dilate validates its inputs") {
    Path p = make_path({{0.0, 0.0}, {1.0, 0.0}});
    REQUIRE_THROWS_AS(dilate(p, {0.1, 0.1}, 0.0, 1.0), InvalidWidths);
    REQUIRE_THROWS_AS(dilate(p, {-0.1}, 0.0, 1.0), InvalidWidths);
    Path single;
    single.vertices = {{0.0, 0.0}};
    REQUIRE_THROWS_AS(dilate(single, {}, 0.0, 1.0), InvalidPath);
}

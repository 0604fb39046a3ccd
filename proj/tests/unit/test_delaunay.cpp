#include <catch2/catch_amalgamated.hpp>

#include "defectforge/delaunay2d.hpp"
#include "defectforge/random.hpp"

using namespace defectforge;

namespace {

double total_area(const Triangulation2D& t) {
    double a = 0.0;
    for (const auto& tr : t.triangles) {
        a += 0.5 * cross(t.points[tr[1]] - t.points[tr[0]], t.points[tr[2]] - t.points[tr[0]]);
    }
    return a;
}

} // namespace

TEST_CASE("delaunay covers the convex hull of a square plus interior points") {
    std::vector<Vec2> pts{{0, 0}, {1, 0}, {1, 1}, {0, 1}, {0.3, 0.4}, {0.7, 0.6}};
    auto t = delaunay_triangulation(pts);
    REQUIRE(total_area(t) == Catch::Approx(1.0).margin(1e-9));
}

TEST_CASE("empty circumcircle property holds on random point sets") {
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        RandomStream s(seed);
        std::vector<Vec2> pts;
        const std::size_t n = 8 + s.uniform_index(20);
        for (std::size_t i = 0; i < n; ++i) pts.push_back({s.uniform(0, 1), s.uniform(0, 1)});
        auto t = delaunay_triangulation(pts);
        const double tol = 1e-9;
        for (const auto& tr : t.triangles) {
            for (std::size_t pi = 0; pi < pts.size(); ++pi) {
                if (pi == static_cast<std::size_t>(tr[0]) ||
                    pi == static_cast<std::size_t>(tr[1]) ||
                    pi == static_cast<std::size_t>(tr[2]))
                    continue;
                const double det = detail::incircle(t.points[tr[0]], t.points[tr[1]],
                                                    t.points[tr[2]], pts[pi]);
                REQUIRE(det <= tol);
            }
        }
    }
}

TEST_CASE("cocircular points triangulate deterministically and cover the square") {
    std::vector<Vec2> pts{{0, 0}, {1, 0}, {1, 1}, {0, 1}};
    auto t1 = delaunay_triangulation(pts);
    auto t2 = delaunay_triangulation(pts);
    REQUIRE(t1.triangles == t2.triangles);
    REQUIRE(t1.triangles.size() == 2);
    REQUIRE(total_area(t1) == Catch::Approx(1.0).margin(1e-12));
}

TEST_CASE("recover_edge forces the other square diagonal") {
    std::vector<Vec2> pts{{0, 0}, {1, 0}, {1.2, 1}, {0, 1}};
    auto t = delaunay_triangulation(pts);
    const bool d02 = t.has_edge(0, 2);
    const bool d13 = t.has_edge(1, 3);
    REQUIRE(d02 != d13); // exactly one diagonal present
    const int a = d02 ? 1 : 0;
    const int b = d02 ? 3 : 2;
    recover_edge(t, a, b);
    REQUIRE(t.has_edge(a, b));
    REQUIRE(total_area(t) == Catch::Approx(polygon_area(pts)).margin(1e-9));
}

TEST_CASE("recover_edge splits on collinear intermediate vertices") {
    // vertex 4 sits on the segment 0-2
    std::vector<Vec2> pts{{0, 0}, {1, 0}, {2, 0.0}, {1, 1}, {1.0, 0.0}};
    // avoid duplicates: nudge the collinear layout into a proper configuration
    pts[2] = {2, 0.2};
    pts[4] = {1, 0.1}; // exactly halfway between (0,0) and (2,0.2)
    auto t = delaunay_triangulation(pts);
    recover_edge(t, 0, 2);
    REQUIRE((t.has_edge(0, 4) && t.has_edge(4, 2)));
}

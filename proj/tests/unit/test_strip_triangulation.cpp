#include <catch2/catch_amalgamated.hpp>

#include <map>

#include "defectforge/strip_triangulation.hpp"

using namespace defectforge;

namespace {

// count how many strip triangles use each consecutive contour vertex pair
std::map<int, int> contour_edge_usage(const std::vector<StripTriangle>& tris, int contour_arcs) {
    std::map<int, int> usage;
    for (int j = 0; j < contour_arcs; ++j) usage[j] = 0;
    for (const StripTriangle& t : tris) {
        const StripVertexRef refs[3] = {t.a, t.b, t.c};
        for (int e = 0; e < 3; ++e) {
            const StripVertexRef& u = refs[e];
            const StripVertexRef& v = refs[(e + 1) % 3];
            if (!u.on_path && !v.on_path && std::abs(u.index - v.index) == 1) {
                usage[std::min(u.index, v.index)]++;
            }
        }
    }
    return usage;
}

std::map<int, int> path_edge_usage(const std::vector<StripTriangle>& tris, int path_arcs) {
    std::map<int, int> usage;
    for (int i = 0; i < path_arcs; ++i) usage[i] = 0;
    for (const StripTriangle& t : tris) {
        const StripVertexRef refs[3] = {t.a, t.b, t.c};
        for (int e = 0; e < 3; ++e) {
            const StripVertexRef& u = refs[e];
            const StripVertexRef& v = refs[(e + 1) % 3];
            if (u.on_path && v.on_path && std::abs(u.index - v.index) == 1) {
                usage[std::min(u.index, v.index)]++;
            }
        }
    }
    return usage;
}

} // namespace

TEST_CASE("single arc with a single top contour arc gives the two case-1 triangles") {
    std::vector<ContourArc> contour{{0, QuadEdge::Top}};
    auto tris = triangulate_side(1, contour);
    REQUIRE(tris.size() == 2);
    REQUIRE(tris[0].case_tag == 1);
    REQUIRE(tris[1].case_tag == 1);
    // T(alpha_0, omega_0, alpha_0^up) and T(omega_0, alpha_0^up, omega_0^up)
    REQUIRE(tris[0].a.on_path);
    REQUIRE(tris[0].b.on_path);
    REQUIRE_FALSE(tris[0].c.on_path);
    REQUIRE(tris[1].a.on_path);
    REQUIRE_FALSE(tris[1].b.on_path);
    REQUIRE_FALSE(tris[1].c.on_path);
}

TEST_CASE("swallowed middle quad is closed by a case-4 fan") {
    // manual enumeration oracle: 2 contributing arcs -> 4 triangles, 1 skipped arc -> 1 fan
    std::vector<ContourArc> contour{{0, QuadEdge::Top}, {2, QuadEdge::Top}};
    auto tris = triangulate_side(3, contour);
    REQUIRE(tris.size() == 5);
    int case4 = 0;
    for (const auto& t : tris)
        if (t.case_tag == 4) ++case4;
    REQUIRE(case4 == 1);
    auto usage = path_edge_usage(tris, 3);
    for (auto [i, cnt] : usage) REQUIRE(cnt == 1); // every path arc exactly once
    auto cu = contour_edge_usage(tris, 2);
    for (auto [j, cnt] : cu) REQUIRE(cnt == 1);
}

TEST_CASE("straight path: case-1 only with 2(k+1) triangles") {
    const int k1 = 7;
    std::vector<ContourArc> contour;
    for (int i = 0; i < k1; ++i) contour.push_back({i, QuadEdge::Top});
    auto tris = triangulate_side(k1, contour);
    REQUIRE(tris.size() == 2 * k1);
    for (const auto& t : tris) REQUIRE(t.case_tag == 1);
}

TEST_CASE("multi-arc tops use case 2 for repeat visits") {
    // quad 0 contributes two top arcs (its top edge re-surfaces after quad 1)
    std::vector<ContourArc> contour{
        {0, QuadEdge::Top}, {1, QuadEdge::Top}, {0, QuadEdge::Top}, {2, QuadEdge::Top}};
    auto tris = triangulate_side(3, contour);
    int case2 = 0;
    for (const auto& t : tris)
        if (t.case_tag == 2) ++case2;
    REQUIRE(case2 == 1);
    auto cu = contour_edge_usage(tris, 4);
    for (auto [j, cnt] : cu) REQUIRE(cnt == 1);
}

TEST_CASE("lateral-edge arcs produce case-3 triangles with their companions") {
    // figure-style sequence: top, jump down a right lateral, continue on a
    // later quad, then a left lateral rising onto the last quad's top edge
    std::vector<ContourArc> contour{{0, QuadEdge::Top},
                                    {0, QuadEdge::Right},
                                    {1, QuadEdge::Top},
                                    {3, QuadEdge::Left},
                                    {3, QuadEdge::Top}};
    auto tris = triangulate_side(4, contour);
    auto cu = contour_edge_usage(tris, 5);
    for (auto [j, cnt] : cu) REQUIRE(cnt == 1);
    auto pu = path_edge_usage(tris, 4);
    for (auto [i, cnt] : pu) REQUIRE(cnt == 1);
    std::map<int, int> cases;
    for (const auto& t : tris) cases[t.case_tag]++;
    REQUIRE(tris.size() == 9);
    REQUIRE(cases[1] == 6); // three top-edge first visits
    REQUIRE(cases[3] == 2); // the two laterals
    REQUIRE(cases[4] == 1); // catch-up fan over the skipped arc 2
}

TEST_CASE("trailing fan covers unvisited path arcs") {
    std::vector<ContourArc> contour{{0, QuadEdge::Top}};
    auto tris = triangulate_side(4, contour);
    auto pu = path_edge_usage(tris, 4);
    for (auto [i, cnt] : pu) REQUIRE(cnt == 1);
    int case4 = 0;
    for (const auto& t : tris)
        if (t.case_tag == 4) ++case4;
    REQUIRE(case4 == 3);
}

TEST_CASE("contour arcs are each the edge of exactly one strip triangle") {
    // a randomized-ish mixed sequence exercising all branches
    std::vector<ContourArc> contour{{1, QuadEdge::Left}, {1, QuadEdge::Top},
                                    {2, QuadEdge::Top},  {2, QuadEdge::Right},
                                    {4, QuadEdge::Top},  {4, QuadEdge::Top},
                                    {5, QuadEdge::Left}, {5, QuadEdge::Top}};
    auto tris = triangulate_side(6, contour);
    auto cu = contour_edge_usage(tris, static_cast<int>(contour.size()));
    for (auto [j, cnt] : cu) REQUIRE(cnt == 1);
    auto pu = path_edge_usage(tris, 6);
    for (auto [i, cnt] : pu) REQUIRE(cnt == 1);
}

TEST_CASE("rectangle cover is two triangles") {
    std::vector<Vec2> ring{{0, 0}, {2, 0}, {2, 1}, {0, 1}};
    auto tris = triangulate_ring(ring);
    REQUIRE(tris.size() == 2);
}

TEST_CASE("reflex ring goes through ear clipping and preserves area") {
    // L-shaped ring; fan from vertex 0 would leave the notch wrong
    std::vector<Vec2> ring{{0, 0}, {2, 0}, {2, 1}, {1, 1}, {1, 2}, {0, 2}};
    REQUIRE_FALSE(is_convex_ring(ring));
    auto tris = triangulate_ring(ring);
    REQUIRE(tris.size() == ring.size() - 2);
    double area = 0.0;
    for (const auto& t : tris) {
        const double a = cross(ring[t[1]] - ring[t[0]], ring[t[2]] - ring[t[0]]) * 0.5;
        REQUIRE(a > 0.0);
        area += a;
    }
    REQUIRE(area == Catch::Approx(polygon_area(ring)).margin(1e-9));
}

TEST_CASE("collinear ring vertices are kept and consumed") {
    std::vector<Vec2> ring{{0, 0}, {1, 0}, {2, 0}, {2, 2}, {0, 2}};
    auto tris = triangulate_ring(ring);
    REQUIRE(tris.size() == 3);
    double area = 0.0;
    bool uses_mid = false;
    for (const auto& t : tris) {
        area += cross(ring[t[1]] - ring[t[0]], ring[t[2]] - ring[t[0]]) * 0.5;
        for (int v : t)
            if (v == 1) uses_mid = true;
    }
    REQUIRE(uses_mid);
    REQUIRE(area == Catch::Approx(4.0).margin(1e-9));
}

TEST_CASE("zip triangulation covers both chains consistently") {
    std::vector<Vec2> upper{{0, 1}, {0.6, 1.2}, {1.4, 1.1}, {2, 1}};
    std::vector<Vec2> lower{{0, 0}, {1, -0.1}, {2, 0}};
    auto tris = zip_triangulate(upper, lower);
    REQUIRE(tris.size() == upper.size() + lower.size() - 2);
    // all counterclockwise
    auto at = [&](const ZipVertexRef& r) { return r.on_upper ? upper[r.index] : lower[r.index]; };
    for (const auto& t : tris) {
        REQUIRE(cross(at(t.b) - at(t.a), at(t.c) - at(t.a)) > 0.0);
    }
    // every chain edge used exactly once
    std::map<std::pair<bool, int>, int> edge_use;
    for (const auto& t : tris) {
        const ZipVertexRef refs[3] = {t.a, t.b, t.c};
        for (int e = 0; e < 3; ++e) {
            const auto& u = refs[e];
            const auto& v = refs[(e + 1) % 3];
            if (u.on_upper == v.on_upper && std::abs(u.index - v.index) == 1) {
                edge_use[{u.on_upper, std::min(u.index, v.index)}]++;
            }
        }
    }
    for (std::size_t i = 0; i + 1 < upper.size(); ++i)
        REQUIRE(edge_use[{true, static_cast<int>(i)}] == 1);
    for (std::size_t i = 0; i + 1 < lower.size(); ++i)
        REQUIRE(edge_use[{false, static_cast<int>(i)}] == 1);
}

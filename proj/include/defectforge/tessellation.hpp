#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <numeric>
#include <unordered_map>
#include <utility>
#include <vector>

#include "defectforge/errors.hpp"
#include "defectforge/geom.hpp"
#include "defectforge/random.hpp"

namespace defectforge {

/// Rectangular generation window W = [w0min,w0max] x [w1min,w1max].
struct Window {
    double w0min = 0.0;
    double w0max = 1.0;
    double w1min = 0.0;
    double w1max = 1.0;

    double width() const { return w0max - w0min; }
    double height() const { return w1max - w1min; }
    bool valid() const { return w0min < w0max && w1min < w1max; }
    bool contains(const Vec2& p) const {
        return p.x >= w0min && p.x <= w0max && p.y >= w1min && p.y <= w1max;
    }
    Rect rect() const { return {w0min, w0max, w1min, w1max}; }
    Polygon polygon() const {
        return {{w0min, w1min}, {w0max, w1min}, {w0max, w1max}, {w0min, w1max}};
    }
};

/// The window dilated by margin gamma on every side.
struct DilatedWindow {
    Window base;
    double gamma = 0.0;

    Rect rect() const {
        return {base.w0min - gamma, base.w0max + gamma, base.w1min - gamma, base.w1max + gamma};
    }
};

/// Bounded Voronoi tessellation: clipped convex cells plus the edge graph
/// restricted to the window (bisector edges only, cut at the window border).
struct Tessellation {
    Window window;
    std::vector<Vec2> generators;       // all n generators, in the dilated window
    std::vector<Polygon> cells;         // C_i intersected with W, possibly empty
    std::vector<Vec2> vertices;         // welded edge-graph vertices inside W
    std::vector<std::array<int, 2>> edges; // vertex-index pairs (bisector pieces)
    std::vector<int> nonempty_cells;    // indices of cells with positive area
    std::vector<Vec2> reference_points; // vertex centroid per nonempty cell

    std::size_t cell_count() const { return nonempty_cells.size(); }
};

enum class WindowSide { Left, Right };

namespace detail {

struct TaggedPolygon {
    std::vector<Vec2> pts;
    std::vector<int> labels; // labels[t]: source of edge pts[t] -> pts[t+1]; -1 = window border
};

/// Sutherland-Hodgman step for dot(x - mid, d) <= 0 keeping per-edge source labels.
inline void clip_tagged(TaggedPolygon& poly, const Vec2& mid, const Vec2& d, int neighbor) {
    const std::size_t n = poly.pts.size();
    if (n == 0) return;
    std::vector<Vec2> out_pts;
    std::vector<int> out_labels;
    out_pts.reserve(n + 1);
    out_labels.reserve(n + 1);
    for (std::size_t t = 0; t < n; ++t) {
        const Vec2& a = poly.pts[t];
        const Vec2& b = poly.pts[(t + 1) % n];
        const int lab = poly.labels[t];
        const double da = dot(a - mid, d);
        const double db = dot(b - mid, d);
        if (da <= 0.0) {
            out_pts.push_back(a);
            out_labels.push_back(lab);
            if (db > 0.0) {
                double u = da / (da - db);
                out_pts.push_back(a + (b - a) * u);
                out_labels.push_back(neighbor);
            }
        } else if (db <= 0.0) {
            double u = da / (da - db);
            out_pts.push_back(a + (b - a) * u);
            out_labels.push_back(lab);
        }
    }
    poly.pts = std::move(out_pts);
    poly.labels = std::move(out_labels);
}

/// Grid-based point welder; returns a stable index per distinct location.
class PointWelder {
public:
    explicit PointWelder(double tol) : tol_(tol), cell_(tol * 4.0) {}

    int index_of(const Vec2& p, std::vector<Vec2>& points) {
        const std::int64_t cx = static_cast<std::int64_t>(std::floor(p.x / cell_));
        const std::int64_t cy = static_cast<std::int64_t>(std::floor(p.y / cell_));
        for (std::int64_t dx = -1; dx <= 1; ++dx) {
            for (std::int64_t dy = -1; dy <= 1; ++dy) {
                auto it = grid_.find(key(cx + dx, cy + dy));
                if (it == grid_.end()) continue;
                for (int idx : it->second) {
                    if (distance(points[idx], p) <= tol_) return idx;
                }
            }
        }
        int idx = static_cast<int>(points.size());
        points.push_back(p);
        grid_[key(cx, cy)].push_back(idx);
        return idx;
    }

private:
    static std::uint64_t key(std::int64_t x, std::int64_t y) {
        return static_cast<std::uint64_t>(x) * 0x9E3779B97F4A7C15ull ^
               static_cast<std::uint64_t>(y);
    }
    double tol_;
    double cell_;
    std::unordered_map<std::uint64_t, std::vector<int>> grid_;
};

} // namespace detail

/// Voronoi tessellation of the given distinct generators, clipped to `window`.
inline Tessellation voronoi_from_generators(std::vector<Vec2> generators, const Window& window) {
    if (generators.size() < 2)
        throw TooFewGenerators("voronoi_from_generators: need at least 2 generators");
    if (!window.valid()) throw InvalidRegion("voronoi_from_generators: invalid window");

    const std::size_t n = generators.size();
    const double scale = std::max(window.width(), window.height());
    const double distinct_tol = 1e-12 * window.width();
    {
        // distinctness check, pruned by x-order
        std::vector<int> order(n);
        std::iota(order.begin(), order.end(), 0);
        std::sort(order.begin(), order.end(),
                  [&](int a, int b) { return generators[a].x < generators[b].x; });
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = i + 1; j < n; ++j) {
                if (generators[order[j]].x - generators[order[i]].x > distinct_tol) break;
                if (distance(generators[order[i]], generators[order[j]]) <= distinct_tol)
                    throw InvalidParams("voronoi_from_generators: generators not distinct");
            }
        }
    }

    Tessellation tess;
    tess.window = window;
    tess.generators = std::move(generators);
    tess.cells.resize(n);

    const Polygon window_poly = window.polygon();
    struct RawEdge {
        Vec2 a, b;
    };
    std::map<std::pair<int, int>, RawEdge> bisector_edges;

    std::vector<std::pair<double, int>> neighbors;
    for (std::size_t i = 0; i < n; ++i) {
        const Vec2 pi = tess.generators[i];
        detail::TaggedPolygon cell;
        cell.pts = window_poly;
        cell.labels = {-1, -1, -1, -1};

        neighbors.clear();
        neighbors.reserve(n - 1);
        for (std::size_t j = 0; j < n; ++j) {
            if (j == i) continue;
            neighbors.push_back({norm2(tess.generators[j] - pi), static_cast<int>(j)});
        }
        // nearest candidates first; the bisector of a generator at distance d can
        // only cut the cell while d/2 < max vertex distance from p_i
        const std::size_t head = std::min<std::size_t>(neighbors.size(), 64);
        std::partial_sort(neighbors.begin(), neighbors.begin() + head, neighbors.end());
        bool head_sorted_only = head < neighbors.size();

        double rmax2 = 0.0;
        auto update_rmax = [&]() {
            rmax2 = 0.0;
            for (const Vec2& v : cell.pts) rmax2 = std::max(rmax2, norm2(v - pi));
        };
        update_rmax();

        for (std::size_t t = 0; t < neighbors.size() && !cell.pts.empty(); ++t) {
            if (t == head && head_sorted_only) {
                std::sort(neighbors.begin() + head, neighbors.end());
                head_sorted_only = false;
            }
            const auto [d2, j] = neighbors[t];
            if (0.25 * d2 > rmax2) break;
            const Vec2 pj = tess.generators[j];
            detail::clip_tagged(cell, (pi + pj) * 0.5, pj - pi, j);
            update_rmax();
        }

        Polygon poly = dedupe_polygon(cell.pts, 1e-12 * scale);
        if (poly.size() >= 3 && polygon_area(poly) > 1e-14 * window.width() * window.height()) {
            tess.cells[i] = poly;
        }

        for (std::size_t t = 0; t < cell.pts.size(); ++t) {
            const int lab = cell.labels[t];
            if (lab < 0) continue;
            const Vec2 a = cell.pts[t];
            const Vec2 b = cell.pts[(t + 1) % cell.pts.size()];
            if (distance(a, b) <= 1e-12 * scale) continue;
            const auto key = std::minmax(static_cast<int>(i), lab);
            bisector_edges.emplace(std::make_pair(key.first, key.second), RawEdge{a, b});
        }
    }

    // weld edge endpoints into the shared vertex list
    detail::PointWelder welder(1e-9 * scale);
    std::map<std::pair<int, int>, bool> seen_pairs;
    for (const auto& [key, e] : bisector_edges) {
        int ia = welder.index_of(e.a, tess.vertices);
        int ib = welder.index_of(e.b, tess.vertices);
        if (ia == ib) continue;
        auto p = std::minmax(ia, ib);
        if (seen_pairs.emplace(std::make_pair(p.first, p.second), true).second)
            tess.edges.push_back({ia, ib});
    }

    for (std::size_t i = 0; i < n; ++i) {
        if (tess.cells[i].empty()) continue;
        tess.nonempty_cells.push_back(static_cast<int>(i));
        tess.reference_points.push_back(polygon_vertex_centroid(tess.cells[i]));
    }
    return tess;
}

/// Sample n distinct generators uniformly in the dilated window and tessellate.
inline Tessellation build_voronoi(RandomStream& stream, const Window& window, double gamma,
                                  std::size_t n) {
    if (n < 2) throw TooFewGenerators("build_voronoi: need n >= 2 generators");
    if (!(gamma > 0.0)) throw InvalidParams("build_voronoi: gamma must be positive");
    if (!window.valid()) throw InvalidRegion("build_voronoi: invalid window");

    const Rect region = DilatedWindow{window, gamma}.rect();
    const double tol = 1e-12 * window.width();
    std::vector<Vec2> pts = uniform_points(stream, region, n);
    // resample collisions so generators stay pairwise distinct
    for (std::size_t i = 0; i < pts.size(); ++i) {
        bool retry = true;
        while (retry) {
            retry = false;
            for (std::size_t j = 0; j < i; ++j) {
                if (distance(pts[i], pts[j]) <= tol) {
                    pts[i] = {stream.uniform(region.x0, region.x1),
                              stream.uniform(region.y0, region.y1)};
                    retry = true;
                    break;
                }
            }
        }
    }
    return voronoi_from_generators(std::move(pts), window);
}

/// Graph vertices lying on the left or right window border.
inline std::vector<int> boundary_vertices(const Tessellation& t, WindowSide side) {
    const double tol = 1e-9 * std::max(t.window.width(), t.window.height());
    const double border = side == WindowSide::Left ? t.window.w0min : t.window.w0max;
    std::vector<int> out;
    for (std::size_t i = 0; i < t.vertices.size(); ++i) {
        if (std::abs(t.vertices[i].x - border) <= tol) out.push_back(static_cast<int>(i));
    }
    if (out.empty())
        throw NoBoundaryVertex(side == WindowSide::Left
                                   ? "no tessellation vertex on the left window border"
                                   : "no tessellation vertex on the right window border");
    return out;
}

/// Index (into nonempty_cells order) of the clipped cell containing p, ties to
/// the lowest cell index. Returns -1 when p is outside every nonempty cell.
inline int locate_cell(const Tessellation& t, const Vec2& p, double eps = 0.0) {
    for (std::size_t k = 0; k < t.nonempty_cells.size(); ++k) {
        const Polygon& poly = t.cells[t.nonempty_cells[k]];
        Polygon ccw = poly;
        if (polygon_signed_area(ccw) < 0.0) std::reverse(ccw.begin(), ccw.end());
        if (point_in_convex_polygon(ccw, p, eps)) return static_cast<int>(k);
    }
    return -1;
}

} // namespace defectforge

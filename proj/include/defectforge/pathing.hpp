#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <vector>

#include "defectforge/errors.hpp"
#include "defectforge/geom.hpp"
#include "defectforge/random.hpp"
#include "defectforge/tessellation.hpp"

namespace defectforge {

/// Directed arc graph over tessellation vertices; every edge contributes two
/// opposite arcs weighted by its Euclidean length.
struct PathGraph {
    std::vector<Vec2> vertices;
    std::vector<std::vector<std::pair<int, double>>> adjacency; // (target, weight)

    std::size_t vertex_count() const { return vertices.size(); }
};

inline PathGraph make_path_graph(const Tessellation& t) {
    PathGraph g;
    g.vertices = t.vertices;
    g.adjacency.resize(t.vertices.size());
    for (const auto& e : t.edges) {
        const double w = distance(t.vertices[e[0]], t.vertices[e[1]]);
        if (!(w > 0.0)) continue;
        g.adjacency[e[0]].push_back({e[1], w});
        g.adjacency[e[1]].push_back({e[0], w});
    }
    for (auto& adj : g.adjacency) std::sort(adj.begin(), adj.end());
    return g;
}

/// Chained vertex sequence v_0 .. v_{k+1}; arc i runs v_i -> v_{i+1}.
struct Path {
    std::vector<Vec2> vertices;

    std::size_t arc_count() const { return vertices.empty() ? 0 : vertices.size() - 1; }
    Vec2 arc_start(std::size_t i) const { return vertices[i]; }
    Vec2 arc_end(std::size_t i) const { return vertices[i + 1]; }
    double arc_length(std::size_t i) const { return distance(vertices[i], vertices[i + 1]); }

    double length() const {
        double s = 0.0;
        for (std::size_t i = 0; i + 1 < vertices.size(); ++i) s += arc_length(i);
        return s;
    }
};

struct ShortestPathResult {
    Path path;
    double weight = 0.0; // sum of arc weights along the path
};

/// Shortest path by Dijkstra with deterministic (distance, index) tie-breaking.
inline ShortestPathResult shortest_path(const PathGraph& g, int start, int end) {
    const int n = static_cast<int>(g.vertex_count());
    if (start < 0 || start >= n || end < 0 || end >= n)
        throw InvalidParams("shortest_path: vertex index out of range");
    if (start == end) throw InvalidParams("shortest_path: start and end must differ");

    constexpr double inf = std::numeric_limits<double>::infinity();
    std::vector<double> dist(n, inf);
    std::vector<int> pred(n, -1);
    std::vector<bool> done(n, false);
    using Entry = std::pair<double, int>;
    std::priority_queue<Entry, std::vector<Entry>, std::greater<Entry>> queue;
    dist[start] = 0.0;
    queue.push({0.0, start});
    while (!queue.empty()) {
        auto [d, u] = queue.top();
        queue.pop();
        if (done[u]) continue;
        done[u] = true;
        if (u == end) break;
        for (const auto& [v, w] : g.adjacency[u]) {
            if (done[v]) continue;
            const double nd = d + w;
            if (nd < dist[v]) {
                dist[v] = nd;
                pred[v] = u;
                queue.push({nd, v});
            }
        }
    }
    if (dist[end] == inf) throw Disconnected("shortest_path: end not reachable from start");

    std::vector<int> order;
    for (int v = end; v != -1; v = pred[v]) order.push_back(v);
    std::reverse(order.begin(), order.end());
    ShortestPathResult res;
    res.weight = dist[end];
    res.path.vertices.reserve(order.size());
    for (int v : order) res.path.vertices.push_back(g.vertices[v]);
    return res;
}

/// Uniform draw of a start vertex from the left border set and an end vertex
/// from the right border set. Consumes exactly two draws.
inline std::pair<int, int> pick_endpoints(RandomStream& stream, const std::vector<int>& left,
                                          const std::vector<int>& right) {
    if (left.empty() || right.empty())
        throw NoBoundaryVertex("pick_endpoints: empty border vertex set");
    int s = left[stream.uniform_index(left.size())];
    int e = right[stream.uniform_index(right.size())];
    return {s, e};
}

inline std::pair<int, int> pick_endpoints(RandomStream& stream, const Tessellation& t) {
    auto left = boundary_vertices(t, WindowSide::Left);
    auto right = boundary_vertices(t, WindowSide::Right);
    return pick_endpoints(stream, left, right);
}

/// Natural cubic spline y(x): second derivative vanishes at both ends.
class NaturalCubicSpline {
public:
    NaturalCubicSpline(std::vector<double> xs, std::vector<double> ys)
        : xs_(std::move(xs)), ys_(std::move(ys)) {
        const std::size_t n = xs_.size();
        if (n < 2 || ys_.size() != n)
            throw InvalidParams("NaturalCubicSpline: need >= 2 control points");
        for (std::size_t i = 0; i + 1 < n; ++i) {
            if (!(xs_[i] < xs_[i + 1]))
                throw InvalidParams("NaturalCubicSpline: x values must strictly increase");
        }
        m_.assign(n, 0.0);
        if (n > 2) {
            // tridiagonal system for interior second derivatives, M_0 = M_{n-1} = 0
            std::vector<double> a(n, 0.0), b(n, 0.0), c(n, 0.0), r(n, 0.0);
            for (std::size_t i = 1; i + 1 < n; ++i) {
                const double h0 = xs_[i] - xs_[i - 1];
                const double h1 = xs_[i + 1] - xs_[i];
                a[i] = h0;
                b[i] = 2.0 * (h0 + h1);
                c[i] = h1;
                r[i] = 6.0 * ((ys_[i + 1] - ys_[i]) / h1 - (ys_[i] - ys_[i - 1]) / h0);
            }
            for (std::size_t i = 2; i + 1 < n; ++i) {
                const double f = a[i] / b[i - 1];
                b[i] -= f * c[i - 1];
                r[i] -= f * r[i - 1];
            }
            for (std::size_t i = n - 2; i >= 1; --i) {
                m_[i] = (r[i] - c[i] * m_[i + 1]) / b[i];
                if (i == 1) break;
            }
        }
    }

    double evaluate(double x) const {
        const std::size_t n = xs_.size();
        std::size_t i = std::upper_bound(xs_.begin(), xs_.end(), x) - xs_.begin();
        i = std::clamp<std::size_t>(i, 1, n - 1) - 1;
        const double h = xs_[i + 1] - xs_[i];
        const double t = (x - xs_[i]) / h;
        const double u = 1.0 - t;
        return u * ys_[i] + t * ys_[i + 1] +
               h * h / 6.0 * ((u * u * u - u) * m_[i] + (t * t * t - t) * m_[i + 1]);
    }

    double second_derivative(double x) const {
        const std::size_t n = xs_.size();
        std::size_t i = std::upper_bound(xs_.begin(), xs_.end(), x) - xs_.begin();
        i = std::clamp<std::size_t>(i, 1, n - 1) - 1;
        const double h = xs_[i + 1] - xs_[i];
        const double t = (x - xs_[i]) / h;
        return (1.0 - t) * m_[i] + t * m_[i + 1];
    }

private:
    std::vector<double> xs_, ys_, m_;
};

/// Spline spec: n+1 control points, k+2 discretization points (k+2 >= 5(n+1)).
/// Empty control_points means "sample per the window contract".
struct SplineSpec {
    std::size_t control_count = 5;        // n + 1
    std::size_t discretization_count = 50; // k + 2
    std::vector<Vec2> control_points;
};

/// Sample n+1 control points: first and last on the left/right window border,
/// interior ones uniform in W, sorted by strictly increasing x.
inline std::vector<Vec2> sample_spline_controls(RandomStream& stream, const Window& window,
                                                std::size_t control_count) {
    if (control_count < 2) throw InvalidParams("sample_spline_controls: need >= 2 controls");
    const double xtol = 1e-9 * window.width();
    std::vector<Vec2> pts;
    for (int attempt = 0; attempt < 64; ++attempt) {
        pts.clear();
        pts.push_back({window.w0min, stream.uniform(window.w1min, window.w1max)});
        for (std::size_t i = 0; i + 2 < control_count; ++i) {
            pts.push_back({stream.uniform(window.w0min, window.w0max),
                           stream.uniform(window.w1min, window.w1max)});
        }
        pts.push_back({window.w0max, stream.uniform(window.w1min, window.w1max)});
        std::sort(pts.begin(), pts.end(), [](const Vec2& a, const Vec2& b) { return a.x < b.x; });
        bool distinct = true;
        for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
            if (pts[i + 1].x - pts[i].x <= xtol) distinct = false;
        }
        if (distinct) return pts;
    }
    throw GeometryError("sample_spline_controls: could not draw strictly increasing x values");
}

/// Discretized natural cubic spline path over the window span.
inline Path spline_path(RandomStream& stream, const Window& window, const SplineSpec& spec) {
    if (spec.control_count < 2) throw InvalidParams("spline_path: need >= 2 control points");
    if (spec.discretization_count < 5 * spec.control_count)
        throw InvalidDiscretization("spline_path: require k+2 >= 5(n+1)");

    std::vector<Vec2> controls = spec.control_points;
    if (controls.empty()) {
        controls = sample_spline_controls(stream, window, spec.control_count);
    } else {
        if (controls.size() != spec.control_count)
            throw InvalidParams("spline_path: control point count mismatch");
        for (std::size_t i = 0; i + 1 < controls.size(); ++i) {
            if (!(controls[i].x < controls[i + 1].x))
                throw InvalidParams("spline_path: control x values must strictly increase");
        }
    }

    std::vector<double> xs(controls.size()), ys(controls.size());
    for (std::size_t i = 0; i < controls.size(); ++i) {
        xs[i] = controls[i].x;
        ys[i] = controls[i].y;
    }
    NaturalCubicSpline spline(xs, ys);

    const std::size_t m = spec.discretization_count; // k + 2 vertices
    Path path;
    path.vertices.reserve(m);
    for (std::size_t i = 0; i < m; ++i) {
        const double t = static_cast<double>(i) / static_cast<double>(m - 1);
        const double x = xs.front() + t * (xs.back() - xs.front());
        path.vertices.push_back({x, spline.evaluate(x)});
    }
    path.vertices.front() = controls.front();
    path.vertices.back() = controls.back();
    return path;
}

/// Merge arcs shorter than `fraction` of the mean arc length into a neighbor.
/// Path endpoints are preserved.
inline Path filter_short_arcs(const Path& path, double fraction = 0.01) {
    if (path.arc_count() <= 1) return path;
    double mean = path.length() / static_cast<double>(path.arc_count());
    const double threshold = fraction * mean;
    std::vector<Vec2> v = path.vertices;
    bool changed = true;
    while (changed && v.size() > 2) {
        changed = false;
        for (std::size_t i = 0; i + 1 < v.size(); ++i) {
            if (distance(v[i], v[i + 1]) < threshold) {
                // drop the interior endpoint of the short arc
                const std::size_t drop = (i + 1 == v.size() - 1) ? i : i + 1;
                if (drop == 0 || drop == v.size() - 1) continue;
                v.erase(v.begin() + static_cast<std::ptrdiff_t>(drop));
                changed = true;
                break;
            }
        }
    }
    return Path{std::move(v)};
}

/// Largest turning angle (radians) between consecutive arcs.
inline double max_turning_angle(const Path& path) {
    double best = 0.0;
    for (std::size_t i = 0; i + 1 < path.arc_count(); ++i) {
        const Vec2 d0 = normalized(path.arc_end(i) - path.arc_start(i));
        const Vec2 d1 = normalized(path.arc_end(i + 1) - path.arc_start(i + 1));
        const double c = std::clamp(dot(d0, d1), -1.0, 1.0);
        best = std::max(best, std::acos(c));
    }
    return best;
}

} // namespace defectforge

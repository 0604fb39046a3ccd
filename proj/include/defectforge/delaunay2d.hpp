#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <vector>

#include "defectforge/errors.hpp"
#include "defectforge/geom.hpp"

namespace defectforge {

/// 2D triangulation over an explicit point list; triangles are CCW.
struct Triangulation2D {
    std::vector<Vec2> points;
    std::vector<std::array<int, 3>> triangles;

    bool has_edge(int a, int b) const {
        for (const auto& t : triangles) {
            for (int e = 0; e < 3; ++e) {
                const int u = t[e], v = t[(e + 1) % 3];
                if ((u == a && v == b) || (u == b && v == a)) return true;
            }
        }
        return false;
    }
};

namespace detail {

/// > 0 if p lies strictly inside the circumcircle of CCW triangle (a,b,c).
inline double incircle(const Vec2& a, const Vec2& b, const Vec2& c, const Vec2& p) {
    const double ax = a.x - p.x, ay = a.y - p.y;
    const double bx = b.x - p.x, by = b.y - p.y;
    const double cx = c.x - p.x, cy = c.y - p.y;
    const double d1 = (ax * ax + ay * ay) * (bx * cy - cx * by);
    const double d2 = (bx * bx + by * by) * (ax * cy - cx * ay);
    const double d3 = (cx * cx + cy * cy) * (ax * by - bx * ay);
    return d1 - d2 + d3;
}

} // namespace detail

/// Bowyer-Watson Delaunay triangulation. Points are inserted in index order;
/// near-cocircular configurations resolve deterministically by that order.
inline Triangulation2D delaunay_triangulation(const std::vector<Vec2>& input) {
    if (input.size() < 3) throw InvalidParams("delaunay_triangulation: need >= 3 points");
    Triangulation2D out;
    out.points = input;

    Box2 bb;
    for (const Vec2& p : input) bb.expand(p);
    const double span = std::max({bb.hi.x - bb.lo.x, bb.hi.y - bb.lo.y, 1e-12});
    const Vec2 mid = (bb.lo + bb.hi) * 0.5;
    const double m = 64.0 * span;

    std::vector<Vec2> pts = input;
    const int s0 = static_cast<int>(pts.size());
    pts.push_back(mid + Vec2{-m, -m});
    pts.push_back(mid + Vec2{m, -m});
    pts.push_back(mid + Vec2{0.0, m});

    std::vector<std::array<int, 3>> tris{{s0, s0 + 1, s0 + 2}};
    const double eps = 1e-12 * span * span * span * span;

    for (int pi = 0; pi < s0; ++pi) {
        const Vec2& p = pts[pi];
        std::vector<std::array<int, 3>> keep;
        std::map<std::pair<int, int>, int> hole_edges; // directed edge -> count
        keep.reserve(tris.size());
        for (const auto& t : tris) {
            const double det = detail::incircle(pts[t[0]], pts[t[1]], pts[t[2]], p);
            if (det > eps) {
                for (int e = 0; e < 3; ++e) {
                    hole_edges[{t[e], t[(e + 1) % 3]}]++;
                }
            } else {
                keep.push_back(t);
            }
        }
        if (hole_edges.empty()) {
            // point on/outside every circumcircle within tolerance: locate the
            // containing triangle and split it directly
            std::size_t best = tris.size();
            double best_q = -std::numeric_limits<double>::max();
            for (std::size_t ti = 0; ti < tris.size(); ++ti) {
                const auto& t = tris[ti];
                double worst = std::numeric_limits<double>::max();
                for (int e = 0; e < 3; ++e) {
                    worst = std::min(worst, cross(pts[t[(e + 1) % 3]] - pts[t[e]],
                                                  p - pts[t[e]]));
                }
                if (worst > best_q) {
                    best_q = worst;
                    best = ti;
                }
            }
            const auto t = tris[best];
            tris.erase(tris.begin() + static_cast<std::ptrdiff_t>(best));
            tris.push_back({t[0], t[1], pi});
            tris.push_back({t[1], t[2], pi});
            tris.push_back({t[2], t[0], pi});
            continue;
        }
        // the hole boundary consists of edges seen once and never reversed
        tris = std::move(keep);
        for (const auto& [edge, cnt] : hole_edges) {
            if (hole_edges.count({edge.second, edge.first})) continue;
            tris.push_back({edge.first, edge.second, pi});
        }
    }

    for (const auto& t : tris) {
        if (t[0] >= s0 || t[1] >= s0 || t[2] >= s0) continue;
        const double a = cross(pts[t[1]] - pts[t[0]], pts[t[2]] - pts[t[0]]);
        if (a <= 0.0) continue; // degenerate sliver against the super triangle
        out.triangles.push_back(t);
    }
    return out;
}

namespace detail {

inline bool on_segment(const Vec2& a, const Vec2& b, const Vec2& p, double eps) {
    const Vec2 d = b - a;
    const double len2 = norm2(d);
    if (len2 <= 0.0) return false;
    if (std::abs(cross(d, p - a)) > eps * std::sqrt(len2)) return false;
    const double t = dot(p - a, d) / len2;
    return t > 1e-9 && t < 1.0 - 1e-9;
}

inline bool proper_crossing(const Vec2& a, const Vec2& b, const Vec2& c, const Vec2& d) {
    const double d1 = cross(b - a, c - a);
    const double d2 = cross(b - a, d - a);
    const double d3 = cross(d - c, a - c);
    const double d4 = cross(d - c, b - c);
    return ((d1 > 0.0 && d2 < 0.0) || (d1 < 0.0 && d2 > 0.0)) &&
           ((d3 > 0.0 && d4 < 0.0) || (d3 < 0.0 && d4 > 0.0));
}

} // namespace detail

/// Force edge (a,b) into the triangulation by flipping crossing edges.
/// Vertices lying on the segment split the recovery into sub-edges.
inline void recover_edge(Triangulation2D& t, int a, int b) {
    if (a == b) return;
    const double span = [&] {
        Box2 bb;
        for (const Vec2& p : t.points) bb.expand(p);
        return std::max(bb.hi.x - bb.lo.x, bb.hi.y - bb.lo.y);
    }();
    const double eps = 1e-9 * span;

    for (int pi = 0; pi < static_cast<int>(t.points.size()); ++pi) {
        if (pi == a || pi == b) continue;
        if (detail::on_segment(t.points[a], t.points[b], t.points[pi], eps)) {
            recover_edge(t, a, pi);
            recover_edge(t, pi, b);
            return;
        }
    }

    for (int iter = 0; iter < 1000; ++iter) {
        if (t.has_edge(a, b)) return;
        // find an edge properly crossing (a,b) with a flippable quad
        bool flipped = false;
        for (std::size_t ti = 0; ti < t.triangles.size() && !flipped; ++ti) {
            for (int e = 0; e < 3 && !flipped; ++e) {
                const int u = t.triangles[ti][e];
                const int v = t.triangles[ti][(e + 1) % 3];
                if (u == a || u == b || v == a || v == b) continue;
                if (!detail::proper_crossing(t.points[a], t.points[b], t.points[u],
                                             t.points[v]))
                    continue;
                // locate the opposite triangle sharing (v,u)
                for (std::size_t tj = 0; tj < t.triangles.size(); ++tj) {
                    if (tj == ti) continue;
                    for (int f = 0; f < 3; ++f) {
                        if (t.triangles[tj][f] == v && t.triangles[tj][(f + 1) % 3] == u) {
                            const int p = t.triangles[ti][(e + 2) % 3];
                            const int q = t.triangles[tj][(f + 2) % 3];
                            // flip only strictly convex quads
                            if (!detail::proper_crossing(t.points[p], t.points[q], t.points[u],
                                                         t.points[v]))
                                continue;
                            t.triangles[ti] = {u, q, p};
                            t.triangles[tj] = {v, p, q};
                            flipped = true;
                            break;
                        }
                    }
                    if (flipped) break;
                }
            }
        }
        if (!flipped && !t.has_edge(a, b))
            throw GeometryError("recover_edge: constraint cannot be recovered");
    }
    throw GeometryError("recover_edge: flip limit exceeded");
}

} // namespace defectforge

#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

#include "defectforge/dilation.hpp"
#include "defectforge/errors.hpp"
#include "defectforge/geom.hpp"

namespace defectforge {

/// Reference into either the path vertex row or the contour vertex row.
struct StripVertexRef {
    bool on_path = true;
    int index = 0;
};

struct StripTriangle {
    StripVertexRef a, b, c;
    int case_tag = 1; // 1..4 per the side-wall construction
};

/// Side-wall triangulation between a path of k+1 arcs and one dilation contour.
/// Walks the contour arcs while tracking which quad each one originates from:
/// top-edge firsts emit the two standard triangles (case 1), repeat visits a
/// single triangle from the last visited quad (case 2), lateral edges their
/// lateral triangle (case 3), and skipped quads catch-up fans (case 4).
inline std::vector<StripTriangle> triangulate_side(std::size_t path_arc_count,
                                                   const std::vector<ContourArc>& contour) {
    if (contour.empty()) throw InvalidContour("triangulate_side: empty contour");
    const int k1 = static_cast<int>(path_arc_count);
    for (const ContourArc& c : contour) {
        if (c.origin < 0 || c.origin >= k1)
            throw InvalidContour("triangulate_side: origin out of range");
    }

    std::vector<StripTriangle> tris;
    auto P = [](int i) { return StripVertexRef{true, i}; };
    auto C = [](int j) { return StripVertexRef{false, j}; };
    auto emit = [&](StripVertexRef a, StripVertexRef b, StripVertexRef c, int tag) {
        tris.push_back({a, b, c, tag});
    };

    std::vector<bool> contour_seen(path_arc_count, false);
    std::vector<bool> edge_done(path_arc_count, false);
    int i_last = -1; // nothing visited yet; quad 0's first arc counts as a first visit
    const int kup = static_cast<int>(contour.size());
    for (int j = 0; j < kup; ++j) {
        const int i = contour[j].origin;
        const QuadEdge cls = contour[j].edge;
        if (i > i_last) {
            if (j == 0 && i > 0) {
                emit(P(0), P(1), C(0), 4);
                edge_done[0] = true;
            }
            for (int m = i_last + 1; m < i; ++m) {
                if (contour_seen[m] || edge_done[m]) continue;
                emit(P(m), P(m + 1), C(j), 4);
                edge_done[m] = true;
            }
            switch (cls) {
            case QuadEdge::Top:
                emit(P(i), P(i + 1), C(j), 1);
                emit(P(i + 1), C(j), C(j + 1), 1);
                edge_done[i] = true;
                i_last = i;
                break;
            case QuadEdge::Left:
                emit(P(i), C(j), C(j + 1), 3);
                if (j + 1 < kup && contour[j + 1].edge != QuadEdge::Top) {
                    emit(P(i), P(i + 1), C(j + 1), 4);
                    edge_done[i] = true;
                    i_last = i;
                } else if (j + 1 < kup && contour[j + 1].origin == i &&
                           contour[j + 1].edge == QuadEdge::Top) {
                    i_last = i - 1; // let case 1 handle the top edge next
                }
                break;
            case QuadEdge::Right:
                if (j > 0 && contour[j - 1].edge != QuadEdge::Top && !edge_done[i]) {
                    emit(P(i), P(i + 1), C(j), 4);
                    edge_done[i] = true;
                }
                emit(P(i + 1), C(j), C(j + 1), 3);
                i_last = i;
                break;
            }
        } else {
            emit(P(i_last + 1), C(j), C(j + 1), cls == QuadEdge::Top ? 2 : 3);
        }
        contour_seen[i] = true;
    }
    for (int m = i_last + 1; m < k1; ++m) {
        if (edge_done[m]) continue;
        emit(P(m), P(m + 1), C(kup), 4);
        edge_done[m] = true;
    }
    return tris;
}

/// Ear-clipping triangulation of a simple CCW polygon; emits index triples.
/// Falls back to a fan step on the least-reflex vertex if no strict ear exists.
inline std::vector<std::array<int, 3>> ear_clip(const std::vector<Vec2>& ring) {
    const std::size_t n = ring.size();
    if (n < 3) throw GeometryError("ear_clip: need at least 3 vertices");
    Box2 bb = bounding_box(ring);
    const double scale = std::max(bb.hi.x - bb.lo.x, bb.hi.y - bb.lo.y);
    const double eps = 1e-12 * scale * scale;

    std::vector<int> idx(n);
    for (std::size_t i = 0; i < n; ++i) idx[i] = static_cast<int>(i);

    std::vector<std::array<int, 3>> out;
    auto is_ear = [&](std::size_t at) {
        const std::size_t m = idx.size();
        const Vec2& p = ring[idx[(at + m - 1) % m]];
        const Vec2& c = ring[idx[at]];
        const Vec2& q = ring[idx[(at + 1) % m]];
        if (cross(c - p, q - c) <= eps) return false; // reflex or collinear corner
        for (std::size_t t = 0; t < m; ++t) {
            if (t == at || t == (at + m - 1) % m || t == (at + 1) % m) continue;
            const Vec2& x = ring[idx[t]];
            // block points inside or on the candidate ear
            const double c1 = cross(c - p, x - p);
            const double c2 = cross(q - c, x - c);
            const double c3 = cross(p - q, x - q);
            if (c1 >= -eps && c2 >= -eps && c3 >= -eps) return false;
        }
        return true;
    };

    while (idx.size() > 3) {
        const std::size_t m = idx.size();
        bool clipped = false;
        for (std::size_t at = 0; at < m; ++at) {
            if (!is_ear(at)) continue;
            out.push_back({idx[(at + m - 1) % m], idx[at], idx[(at + 1) % m]});
            idx.erase(idx.begin() + static_cast<std::ptrdiff_t>(at));
            clipped = true;
            break;
        }
        if (!clipped) {
            // degenerate remainder: clip at the most convex corner
            double best = std::numeric_limits<double>::lowest();
            std::size_t at = 0;
            for (std::size_t t = 0; t < m; ++t) {
                const Vec2& p = ring[idx[(t + m - 1) % m]];
                const Vec2& c = ring[idx[t]];
                const Vec2& q = ring[idx[(t + 1) % m]];
                const double cr = cross(c - p, q - c);
                if (cr > best) {
                    best = cr;
                    at = t;
                }
            }
            if (!(best > 0.0)) throw GeometryError("ear_clip: polygon degenerated");
            out.push_back({idx[(at + m - 1) % m], idx[at], idx[(at + 1) % m]});
            idx.erase(idx.begin() + static_cast<std::ptrdiff_t>(at));
        }
    }
    out.push_back({idx[0], idx[1], idx[2]});
    return out;
}

/// True if the CCW polygon is convex (used to pick the fan fast path for covers).
inline bool is_convex_ring(const std::vector<Vec2>& ring) {
    const std::size_t n = ring.size();
    Box2 bb = bounding_box(ring);
    const double scale = std::max(bb.hi.x - bb.lo.x, bb.hi.y - bb.lo.y);
    const double eps = 1e-12 * scale * scale;
    for (std::size_t i = 0; i < n; ++i) {
        const Vec2& p = ring[i];
        const Vec2& c = ring[(i + 1) % n];
        const Vec2& q = ring[(i + 2) % n];
        if (cross(c - p, q - c) < -eps) return false;
    }
    return true;
}

/// Planar cover triangulation: convex rings fan from the first vertex,
/// anything else goes through ear clipping.
inline std::vector<std::array<int, 3>> triangulate_ring(const std::vector<Vec2>& ring) {
    if (ring.size() < 3) throw GeometryError("triangulate_ring: need at least 3 vertices");
    if (is_convex_ring(ring)) {
        std::vector<std::array<int, 3>> out;
        for (std::size_t i = 1; i + 1 < ring.size(); ++i) {
            out.push_back({0, static_cast<int>(i), static_cast<int>(i + 1)});
        }
        return out;
    }
    return ear_clip(ring);
}

/// Reference into one of the two chains zipped by zip_triangulate.
struct ZipVertexRef {
    bool on_upper = true;
    int index = 0;
};

struct ZipTriangle {
    ZipVertexRef a, b, c;
};

/// Triangulate the band between two x-monotone chains (upper strictly above
/// lower). Advances the chain whose next vertex has the smaller x, emitting
/// counterclockwise triangles.
inline std::vector<ZipTriangle> zip_triangulate(const std::vector<Vec2>& upper,
                                                const std::vector<Vec2>& lower) {
    if (upper.size() < 2 || lower.size() < 2)
        throw GeometryError("zip_triangulate: chains need >= 2 vertices");
    std::vector<ZipTriangle> out;
    std::size_t ia = 0, ib = 0;
    auto U = [](std::size_t i) { return ZipVertexRef{true, static_cast<int>(i)}; };
    auto L = [](std::size_t i) { return ZipVertexRef{false, static_cast<int>(i)}; };
    while (ia + 1 < upper.size() || ib + 1 < lower.size()) {
        bool advance_upper;
        if (ia + 1 >= upper.size()) advance_upper = false;
        else if (ib + 1 >= lower.size()) advance_upper = true;
        else advance_upper = upper[ia + 1].x <= lower[ib + 1].x;
        if (advance_upper) {
            out.push_back({U(ia), L(ib), U(ia + 1)});
            ++ia;
        } else {
            out.push_back({U(ia), L(ib), L(ib + 1)});
            ++ib;
        }
    }
    return out;
}

} // namespace defectforge

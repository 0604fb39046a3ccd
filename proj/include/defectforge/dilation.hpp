#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <vector>

#include "defectforge/errors.hpp"
#include "defectforge/geom.hpp"
#include "defectforge/pathing.hpp"

namespace defectforge {

enum class QuadEdge { Top, Left, Right };

/// Per-arc half widths and upward unit normals of the structuring segments.
struct WidthProfile {
    std::vector<double> half_widths;
    std::vector<Vec2> normals; // filled by dilate(); unit, n.y >= 0
};

/// One contour arc together with the path arc and quad edge it originates from.
struct ContourArc {
    int origin = 0;
    QuadEdge edge = QuadEdge::Top;
};

/// One side (upper or lower) of a dilated path.
struct SideDilation {
    std::vector<Polygon> quads;    // per path arc, CCW
    std::vector<Vec2> contour;     // chained polyline spanning the strip in x
    std::vector<ContourArc> arcs;  // size contour.size() - 1
    int reflex_repairs = 0;        // junctions resolved through inter()
};

/// Arc-wise dilation of a path restricted to the strip [x0,x1] x R.
struct DilatedPath {
    Path path;
    std::vector<double> half_widths;
    std::vector<Vec2> normals;
    double strip_x0 = 0.0;
    double strip_x1 = 0.0;
    SideDilation upper;
    SideDilation lower;
};

namespace detail {

/// Upward unit normal of an arc direction; left perp for vertical-normal ties.
inline Vec2 upward_normal(const Vec2& dir) {
    Vec2 n = perp(dir);
    if (n.y < 0.0) n = -n;
    return n;
}

struct CornerResult {
    Vec2 point;
    bool fallback = false;     // keep both plain rectangle corners instead
    bool extends_prev = true;  // the point replaces quad i's right corner
    bool extends_next = true;  // the point replaces quad i+1's left corner
};

/// Intersection of the two offset top edges at a reflex junction; the smaller
/// offset edge is elongated to the other rectangle's near lateral side when the
/// ray-ray intersection is empty. Gap filling only ever adds area: in the
/// lateral-hit case only the smaller-offset quad is extended.
inline CornerResult inter_offset_corner(const Vec2& junction, const Vec2& dir_i, double l_i,
                                        const Vec2& n_i, const Vec2& dir_j, double l_j,
                                        const Vec2& n_j) {
    const Vec2 p1 = junction + l_i * n_i; // top corner of quad i at its omega
    const Vec2 p2 = junction + l_j * n_j; // top corner of quad j at its alpha
    const double denom = cross(dir_i, dir_j);
    const double eps = 1e-12;
    if (std::abs(denom) > eps) {
        const Vec2 d = p2 - p1;
        const double lambda = cross(d, dir_j) / denom;
        const double tau = cross(dir_i, d) / denom;
        if (lambda >= -eps && tau >= -eps) return {p1 + lambda * dir_i, false, true, true};
    }
    // elongate the edge with the smaller scaling factor to the other lateral side
    if (l_i != l_j) {
        Vec2 ray_p, ray_d, seg_a, seg_b;
        if (l_i < l_j) {
            ray_p = p1;
            ray_d = dir_i;
            seg_a = junction;          // left lateral side of quad j
            seg_b = junction + l_j * n_j;
        } else {
            ray_p = p2;
            ray_d = -dir_j;
            seg_a = junction;          // right lateral side of quad i
            seg_b = junction + l_i * n_i;
        }
        double t, s;
        if (line_line_intersection(ray_p, ray_d, seg_a, seg_b - seg_a, t, s) && t >= -eps &&
            s >= -eps && s <= 1.0 + eps) {
            return {ray_p + t * ray_d, false, l_i < l_j, l_j < l_i};
        }
    }
    return {Vec2{}, true, false, false};
}

/// Piecewise-linear upper boundary; x weakly increasing, vertical jumps allowed.
struct EnvPoint {
    Vec2 p;
    ContourArc tag; // tag of the segment starting at this point
};
using Envelope = std::vector<EnvPoint>;

/// Upper hull of a convex quad as (point, quad-edge label) chain, x increasing.
inline Envelope quad_upper_chain(const Polygon& quad, int arc_index) {
    // quad vertices in order alpha, left corner, right corner, omega
    struct Named {
        Vec2 p;
        int id;
    };
    std::array<Named, 4> pts{Named{quad[0], 0}, Named{quad[1], 1}, Named{quad[2], 2},
                             Named{quad[3], 3}};
    std::sort(pts.begin(), pts.end(), [](const Named& a, const Named& b) {
        return a.p.x < b.p.x || (a.p.x == b.p.x && a.p.y < b.p.y);
    });
    // Andrew upper hull
    std::vector<Named> hull;
    for (const Named& q : pts) {
        while (hull.size() >= 2 &&
               cross(hull.back().p - hull[hull.size() - 2].p, q.p - hull[hull.size() - 2].p) >=
                   0.0) {
            hull.pop_back();
        }
        hull.push_back(q);
    }
    auto edge_label = [&](int a, int b) {
        const int lo = std::min(a, b), hi = std::max(a, b);
        if (lo == 0 && hi == 1) return QuadEdge::Left;
        if (lo == 1 && hi == 2) return QuadEdge::Top;
        if (lo == 2 && hi == 3) return QuadEdge::Right;
        return QuadEdge::Top; // diagonal of a degenerate quad; treat as top
    };
    Envelope chain;
    for (std::size_t i = 0; i < hull.size(); ++i) {
        ContourArc tag{arc_index, QuadEdge::Top};
        if (i + 1 < hull.size()) tag = {arc_index, edge_label(hull[i].id, hull[i + 1].id)};
        chain.push_back({hull[i].p, tag});
    }
    // drop zero-x-extent chains (cannot contribute to the upper boundary)
    if (chain.size() < 2 || chain.back().p.x - chain.front().p.x <= 0.0) chain.clear();
    return chain;
}

inline double env_front_x(const Envelope& e) { return e.front().p.x; }
inline double env_back_x(const Envelope& e) { return e.back().p.x; }

/// Pointwise maximum of two partial piecewise-linear functions. Where only one
/// is defined it wins; value gaps at domain joints become vertical connectors.
inline Envelope merge_upper_envelopes(const Envelope& A, const Envelope& B, double scale) {
    if (A.empty()) return B;
    if (B.empty()) return A;
    const double xeps = 1e-12 * scale;
    const double yeps = 1e-12 * scale;

    std::vector<double> events;
    events.reserve(A.size() + B.size());
    for (const auto& e : A) events.push_back(e.p.x);
    for (const auto& e : B) events.push_back(e.p.x);
    std::sort(events.begin(), events.end());
    events.erase(std::unique(events.begin(), events.end(),
                             [&](double a, double b) { return b - a <= xeps; }),
                 events.end());

    struct Cursor {
        const Envelope* env;
        std::size_t seg = 0; // segment [seg, seg+1]

        bool covers(double x1, double x2, double xeps_) {
            const Envelope& e = *env;
            if (x1 < e.front().p.x - xeps_ || x2 > e.back().p.x + xeps_) return false;
            while (seg + 1 < e.size() && e[seg + 1].p.x <= x1 + xeps_) ++seg;
            return seg + 1 < e.size();
        }
        double value(double x) const {
            const Envelope& e = *env;
            const Vec2& a = e[seg].p;
            const Vec2& b = e[seg + 1].p;
            if (b.x - a.x <= 0.0) return std::max(a.y, b.y);
            const double t = std::clamp((x - a.x) / (b.x - a.x), 0.0, 1.0);
            return a.y + t * (b.y - a.y);
        }
        ContourArc tag() const { return (*env)[seg].tag; }
    };
    Cursor ca{&A}, cb{&B};

    Envelope out;
    auto emit = [&](const Vec2& p, const ContourArc& tag) {
        if (!out.empty()) {
            const Vec2 prev = out.back().p;
            if (std::abs(prev.x - p.x) <= xeps) {
                if (std::abs(prev.y - p.y) <= yeps) {
                    out.back().tag = tag; // same point: refresh outgoing tag
                    return;
                }
                // value gap at a domain joint: vertical connector standing in for
                // the lateral edge of the quad that starts (rising) or ends (falling)
                ContourArc conn{tag.origin, QuadEdge::Left};
                if (p.y < prev.y) {
                    const int old_origin =
                        out.size() >= 2 ? out[out.size() - 2].tag.origin : tag.origin;
                    conn = {old_origin, QuadEdge::Right};
                }
                out.back().tag = conn;
            }
        }
        out.push_back({p, tag});
    };

    for (std::size_t k = 0; k + 1 < events.size(); ++k) {
        const double x1 = events[k];
        const double x2 = events[k + 1];
        if (x2 - x1 <= xeps) continue;
        const bool ina = ca.covers(x1, x2, xeps);
        const bool inb = cb.covers(x1, x2, xeps);
        if (!ina && !inb) continue;
        if (ina != inb) {
            Cursor& w = ina ? ca : cb;
            emit({x1, w.value(x1)}, w.tag());
            emit({x2, w.value(x2)}, w.tag());
            continue;
        }
        const double d1 = ca.value(x1) - cb.value(x1);
        const double d2 = ca.value(x2) - cb.value(x2);
        const bool a_first = d1 > yeps || (std::abs(d1) <= yeps && d2 >= 0.0);
        if ((d1 >= -yeps && d2 >= -yeps) || (d1 <= yeps && d2 <= yeps)) {
            Cursor& w = a_first ? ca : cb;
            emit({x1, w.value(x1)}, w.tag());
            emit({x2, w.value(x2)}, w.tag());
        } else {
            // the two pieces cross inside the subinterval
            const double t = d1 / (d1 - d2);
            const double xc = x1 + t * (x2 - x1);
            Cursor& first = a_first ? ca : cb;
            Cursor& second = a_first ? cb : ca;
            emit({x1, first.value(x1)}, first.tag());
            emit({xc, first.value(xc)}, second.tag());
            emit({x2, second.value(x2)}, second.tag());
        }
    }
    return out;
}

/// Cut an envelope to [x0, x1].
inline Envelope clip_envelope(const Envelope& env, double x0, double x1, double scale) {
    const double xeps = 1e-12 * scale;
    Envelope out;
    for (std::size_t i = 0; i + 1 < env.size(); ++i) {
        Vec2 a = env[i].p;
        Vec2 b = env[i + 1].p;
        ContourArc tag = env[i].tag;
        if (b.x <= x0 + xeps && a.x <= x0 + xeps) continue;
        if (a.x >= x1 - xeps && b.x >= x1 - xeps) continue;
        if (a.x < x0 && b.x > a.x) {
            const double t = (x0 - a.x) / (b.x - a.x);
            a = {x0, a.y + t * (b.y - a.y)};
        }
        if (b.x > x1 && b.x > a.x) {
            const double t = (x1 - a.x) / (b.x - a.x);
            b = {x1, a.y + t * (b.y - a.y)};
        }
        if (out.empty()) out.push_back({a, tag});
        out.back().tag = tag;
        if (std::abs(out.back().p.x - b.x) > xeps || std::abs(out.back().p.y - b.y) > 1e-12 * scale)
            out.push_back({b, tag});
    }
    return out;
}

/// Build quads and the contour envelope for the upper side of a path.
inline SideDilation dilate_upper_side(const Path& path, const std::vector<double>& widths,
                                      double x0, double x1, double scale) {
    const std::size_t k1 = path.arc_count(); // k + 1 arcs
    std::vector<Vec2> dirs(k1), normals(k1);
    for (std::size_t i = 0; i < k1; ++i) {
        const Vec2 d = path.arc_end(i) - path.arc_start(i);
        const double len = norm(d);
        if (!(len > 0.0)) throw InvalidPath("dilate: zero-length arc");
        dirs[i] = d / len;
        normals[i] = upward_normal(dirs[i]);
    }

    SideDilation side;
    // resolve the corner replacements at each interior junction
    std::vector<std::optional<Vec2>> right_corner(k1 > 0 ? k1 - 1 : 0);
    std::vector<std::optional<Vec2>> left_corner(k1 > 0 ? k1 - 1 : 0);
    for (std::size_t i = 0; i + 1 < k1; ++i) {
        const double c = cross(dirs[i], dirs[i + 1]);
        const double d = dot(dirs[i], dirs[i + 1]);
        const bool reflex = c < -1e-12 || (std::abs(c) <= 1e-12 && d < 0.0);
        if (!reflex) continue; // angle in (0, pi]: both quads keep their own corners
        auto res = inter_offset_corner(path.vertices[i + 1], dirs[i], widths[i], normals[i],
                                       dirs[i + 1], widths[i + 1], normals[i + 1]);
        if (!res.fallback) {
            if (res.extends_prev) right_corner[i] = res.point;
            if (res.extends_next) left_corner[i] = res.point;
            ++side.reflex_repairs;
        }
    }

    side.quads.resize(k1);
    for (std::size_t i = 0; i < k1; ++i) {
        const Vec2 a = path.arc_start(i);
        const Vec2 o = path.arc_end(i);
        Vec2 left = (i > 0 && left_corner[i - 1]) ? *left_corner[i - 1]
                                                  : a + widths[i] * normals[i];
        Vec2 right = (i + 1 < k1 && right_corner[i]) ? *right_corner[i]
                                                     : o + widths[i] * normals[i];
        if (i == 0 && left.x > x0 && std::abs(dirs[i].x) > 1e-9) {
            // start gap: extend the top edge back to the strip border
            const double t = (x0 - left.x) / dirs[i].x;
            left = left + t * dirs[i];
        }
        if (i == k1 - 1 && right.x < x1 && std::abs(dirs[i].x) > 1e-9) {
            const double t = (x1 - right.x) / dirs[i].x;
            right = right + t * dirs[i];
        }
        // guard against inverted corners from extreme junction geometry
        if (dot(right - left, dirs[i]) <= 0.0) {
            left = a + widths[i] * normals[i];
            right = o + widths[i] * normals[i];
        }
        side.quads[i] = {a, left, right, o};
    }

    Envelope env;
    for (std::size_t i = 0; i < k1; ++i) {
        Envelope chain = quad_upper_chain(side.quads[i], static_cast<int>(i));
        env = merge_upper_envelopes(env, chain, scale);
    }
    env = clip_envelope(env, x0, x1, scale);
    if (env.size() < 2) throw GeometryError("dilate: contour collapsed");

    side.contour.reserve(env.size());
    side.arcs.reserve(env.size() - 1);
    for (std::size_t i = 0; i < env.size(); ++i) {
        side.contour.push_back(env[i].p);
        if (i + 1 < env.size()) side.arcs.push_back(env[i].tag);
    }
    // output quads in CCW order
    for (Polygon& q : side.quads) {
        if (polygon_signed_area(q) < 0.0) std::reverse(q.begin(), q.end());
    }
    return side;
}

} // namespace detail

/// Arc-wise dilation of a chained path with per-arc half widths, clipped to the
/// strip [x0,x1] x R. Produces the upper and lower quad sequences and contours.
inline DilatedPath dilate(const Path& path, const std::vector<double>& half_widths, double x0,
                          double x1) {
    if (path.arc_count() < 1) throw InvalidPath("dilate: path needs at least one arc");
    if (half_widths.size() != path.arc_count())
        throw InvalidWidths("dilate: one half width per path arc required");
    for (double w : half_widths) {
        if (!(w > 0.0)) throw InvalidWidths("dilate: half widths must be positive");
    }
    if (!(x0 < x1)) throw InvalidRegion("dilate: empty strip");

    const double scale = x1 - x0;
    DilatedPath out;
    out.path = path;
    out.half_widths = half_widths;
    out.strip_x0 = x0;
    out.strip_x1 = x1;
    out.upper = detail::dilate_upper_side(path, half_widths, x0, x1, scale);

    Path mirrored;
    mirrored.vertices.reserve(path.vertices.size());
    for (const Vec2& v : path.vertices) mirrored.vertices.push_back({v.x, -v.y});
    SideDilation low = detail::dilate_upper_side(mirrored, half_widths, x0, x1, scale);
    for (Vec2& p : low.contour) p.y = -p.y;
    for (Polygon& q : low.quads) {
        for (Vec2& p : q) p.y = -p.y;
        std::reverse(q.begin(), q.end()); // restore CCW after mirroring
    }
    out.lower = std::move(low);

    out.normals.resize(path.arc_count());
    for (std::size_t i = 0; i < path.arc_count(); ++i) {
        out.normals[i] = detail::upward_normal(normalized(path.arc_end(i) - path.arc_start(i)));
    }
    return out;
}

/// Membership in the dilated footprint (union of upper and lower quads).
inline bool dilation_contains(const DilatedPath& d, const Vec2& p, double eps = 1e-9) {
    if (p.x < d.strip_x0 - eps || p.x > d.strip_x1 + eps) return false;
    for (const Polygon& q : d.upper.quads) {
        if (point_in_convex_polygon(q, p, eps)) return true;
    }
    for (const Polygon& q : d.lower.quads) {
        if (point_in_convex_polygon(q, p, eps)) return true;
    }
    return false;
}

/// Membership in the raw rectangle union (plain per-arc rectangles) clipped to the strip.
inline bool raw_rectangles_contain(const DilatedPath& d, const Vec2& p, double eps = 1e-9) {
    if (p.x < d.strip_x0 - eps || p.x > d.strip_x1 + eps) return false;
    for (std::size_t i = 0; i < d.path.arc_count(); ++i) {
        const Vec2 a = d.path.arc_start(i);
        const Vec2 o = d.path.arc_end(i);
        const Vec2 off = d.half_widths[i] * d.normals[i];
        Polygon rect{a - off, o - off, o + off, a + off};
        if (polygon_signed_area(rect) < 0.0) std::reverse(rect.begin(), rect.end());
        if (point_in_convex_polygon(rect, p, eps)) return true;
    }
    return false;
}

} // namespace defectforge

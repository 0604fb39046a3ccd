#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <vector>

#include "defectforge/errors.hpp"

namespace defectforge {

struct Vec2 {
    double x = 0.0;
    double y = 0.0;

    Vec2() = default;
    Vec2(double x_, double y_) : x(x_), y(y_) {}

    Vec2 operator+(const Vec2& o) const { return {x + o.x, y + o.y}; }
    Vec2 operator-(const Vec2& o) const { return {x - o.x, y - o.y}; }
    Vec2 operator*(double s) const { return {x * s, y * s}; }
    Vec2 operator/(double s) const { return {x / s, y / s}; }
    Vec2 operator-() const { return {-x, -y}; }
    Vec2& operator+=(const Vec2& o) {
        x += o.x;
        y += o.y;
        return *this;
    }
    bool operator==(const Vec2& o) const { return x == o.x && y == o.y; }
};

inline Vec2 operator*(double s, const Vec2& v) { return v * s; }
inline double dot(const Vec2& a, const Vec2& b) { return a.x * b.x + a.y * b.y; }
inline double cross(const Vec2& a, const Vec2& b) { return a.x * b.y - a.y * b.x; }
inline double norm2(const Vec2& v) { return dot(v, v); }
inline double norm(const Vec2& v) { return std::sqrt(norm2(v)); }
inline double distance(const Vec2& a, const Vec2& b) { return norm(a - b); }
inline Vec2 normalized(const Vec2& v) {
    double n = norm(v);
    return n > 0.0 ? v / n : Vec2{0.0, 0.0};
}
/// Counterclockwise quarter turn.
inline Vec2 perp(const Vec2& v) { return {-v.y, v.x}; }

struct Vec3 {
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;

    Vec3() = default;
    Vec3(double x_, double y_, double z_) : x(x_), y(y_), z(z_) {}
    Vec3(const Vec2& v, double z_) : x(v.x), y(v.y), z(z_) {}

    Vec3 operator+(const Vec3& o) const { return {x + o.x, y + o.y, z + o.z}; }
    Vec3 operator-(const Vec3& o) const { return {x - o.x, y - o.y, z - o.z}; }
    Vec3 operator*(double s) const { return {x * s, y * s, z * s}; }
    Vec3 operator/(double s) const { return {x / s, y / s, z / s}; }
    bool operator==(const Vec3& o) const { return x == o.x && y == o.y && z == o.z; }
};

inline Vec3 operator*(double s, const Vec3& v) { return v * s; }
inline double dot(const Vec3& a, const Vec3& b) { return a.x * b.x + a.y * b.y + a.z * b.z; }
inline Vec3 cross(const Vec3& a, const Vec3& b) {
    return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}
inline double norm2(const Vec3& v) { return dot(v, v); }
inline double norm(const Vec3& v) { return std::sqrt(norm2(v)); }
inline Vec3 normalized(const Vec3& v) {
    double n = norm(v);
    return n > 0.0 ? v / n : Vec3{0.0, 0.0, 0.0};
}

using Polygon = std::vector<Vec2>;

/// Signed area, positive for counterclockwise orientation.
inline double polygon_signed_area(const Polygon& poly) {
    double a = 0.0;
    for (std::size_t i = 0, n = poly.size(); i < n; ++i) {
        const Vec2& p = poly[i];
        const Vec2& q = poly[(i + 1) % n];
        a += cross(p, q);
    }
    return 0.5 * a;
}

inline double polygon_area(const Polygon& poly) { return std::abs(polygon_signed_area(poly)); }

/// Plain mean of the vertex list (not the area centroid).
inline Vec2 polygon_vertex_centroid(const Polygon& poly) {
    Vec2 c{0.0, 0.0};
    for (const Vec2& p : poly) c += p;
    return c / static_cast<double>(poly.size());
}

/// True if p lies inside or on a convex polygon given in CCW order.
inline bool point_in_convex_polygon(const Polygon& poly, const Vec2& p, double eps = 0.0) {
    for (std::size_t i = 0, n = poly.size(); i < n; ++i) {
        const Vec2& a = poly[i];
        const Vec2& b = poly[(i + 1) % n];
        if (cross(b - a, p - a) < -eps) return false;
    }
    return true;
}

/// Clip a convex polygon by the half-plane dot(p, n) <= c (Sutherland-Hodgman step).
inline Polygon clip_convex_by_halfplane(const Polygon& poly, const Vec2& n, double c) {
    Polygon out;
    const std::size_t sz = poly.size();
    if (sz == 0) return out;
    out.reserve(sz + 1);
    for (std::size_t i = 0; i < sz; ++i) {
        const Vec2& a = poly[i];
        const Vec2& b = poly[(i + 1) % sz];
        const double da = dot(a, n) - c;
        const double db = dot(b, n) - c;
        if (da <= 0.0) {
            out.push_back(a);
            if (db > 0.0) {
                double t = da / (da - db);
                out.push_back(a + (b - a) * t);
            }
        } else if (db <= 0.0) {
            double t = da / (da - db);
            out.push_back(a + (b - a) * t);
        }
    }
    return out;
}

/// Intersection of two convex polygons (both CCW). Empty result if disjoint.
inline Polygon convex_intersection(Polygon subject, const Polygon& clip) {
    for (std::size_t i = 0, n = clip.size(); i < n && !subject.empty(); ++i) {
        const Vec2& a = clip[i];
        const Vec2& b = clip[(i + 1) % n];
        Vec2 edge = b - a;
        // interior is on the left of a->b; keep cross(edge, p - a) >= 0
        Vec2 nrm{edge.y, -edge.x}; // dot(p, nrm) <= dot(a, nrm) keeps the left side
        subject = clip_convex_by_halfplane(subject, nrm, dot(a, nrm));
    }
    return subject;
}

/// Remove consecutive near-duplicate vertices.
inline Polygon dedupe_polygon(const Polygon& poly, double tol) {
    Polygon out;
    for (const Vec2& p : poly) {
        if (out.empty() || distance(out.back(), p) > tol) out.push_back(p);
    }
    while (out.size() > 1 && distance(out.front(), out.back()) <= tol) out.pop_back();
    return out;
}

/// Intersection of lines p + t*u and q + s*v; returns false when parallel.
inline bool line_line_intersection(const Vec2& p, const Vec2& u, const Vec2& q, const Vec2& v,
                                   double& t, double& s) {
    const double denom = cross(u, v);
    if (denom == 0.0) return false;
    const Vec2 d = q - p;
    t = cross(d, v) / denom;
    s = cross(d, u) / denom;
    return true;
}

struct Box2 {
    Vec2 lo{std::numeric_limits<double>::max(), std::numeric_limits<double>::max()};
    Vec2 hi{std::numeric_limits<double>::lowest(), std::numeric_limits<double>::lowest()};

    void expand(const Vec2& p) {
        lo.x = std::min(lo.x, p.x);
        lo.y = std::min(lo.y, p.y);
        hi.x = std::max(hi.x, p.x);
        hi.y = std::max(hi.y, p.y);
    }
    bool valid() const { return lo.x <= hi.x && lo.y <= hi.y; }
};

inline Box2 bounding_box(const Polygon& poly) {
    Box2 b;
    for (const Vec2& p : poly) b.expand(p);
    return b;
}

struct Box3 {
    Vec3 lo{std::numeric_limits<double>::max(), std::numeric_limits<double>::max(),
            std::numeric_limits<double>::max()};
    Vec3 hi{std::numeric_limits<double>::lowest(), std::numeric_limits<double>::lowest(),
            std::numeric_limits<double>::lowest()};

    void expand(const Vec3& p) {
        lo.x = std::min(lo.x, p.x);
        lo.y = std::min(lo.y, p.y);
        lo.z = std::min(lo.z, p.z);
        hi.x = std::max(hi.x, p.x);
        hi.y = std::max(hi.y, p.y);
        hi.z = std::max(hi.z, p.z);
    }
    bool overlaps(const Box3& o, double pad = 0.0) const {
        return lo.x <= o.hi.x + pad && o.lo.x <= hi.x + pad && lo.y <= o.hi.y + pad &&
               o.lo.y <= hi.y + pad && lo.z <= o.hi.z + pad && o.lo.z <= hi.z + pad;
    }
    double diagonal() const {
        if (lo.x > hi.x) return 0.0;
        return norm(hi - lo);
    }
};

} // namespace defectforge

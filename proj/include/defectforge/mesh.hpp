#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <unordered_map>
#include <vector>

#include "defectforge/errors.hpp"
#include "defectforge/geom.hpp"

namespace defectforge {

/// Provenance of a triangle within a defect mesh.
enum class TriTag : std::uint8_t { Strip, Surface, End, Up, Low, Cover, Other };

/// Indexed triangle surface. Closed meshes enclose a volume; orientation is
/// outward (counterclockwise seen from outside).
struct SurfaceMesh {
    std::vector<Vec3> vertices;
    std::vector<std::array<int, 3>> triangles;
    std::vector<TriTag> tags;

    bool empty() const { return triangles.empty(); }

    int add_vertex(const Vec3& p) {
        vertices.push_back(p);
        return static_cast<int>(vertices.size()) - 1;
    }
    void add_triangle(int a, int b, int c, TriTag tag = TriTag::Other) {
        triangles.push_back({a, b, c});
        tags.push_back(tag);
    }

    Box3 bounds() const {
        Box3 b;
        for (const Vec3& v : vertices) b.expand(v);
        return b;
    }

    Vec3 triangle_normal(std::size_t t) const {
        const auto& tr = triangles[t];
        return cross(vertices[tr[1]] - vertices[tr[0]], vertices[tr[2]] - vertices[tr[0]]);
    }
    double triangle_area(std::size_t t) const { return 0.5 * norm(triangle_normal(t)); }

    void flip() {
        for (auto& t : triangles) std::swap(t[1], t[2]);
    }
    void translate(const Vec3& d) {
        for (Vec3& v : vertices) v = v + d;
    }

    void append(const SurfaceMesh& other) {
        const int base = static_cast<int>(vertices.size());
        vertices.insert(vertices.end(), other.vertices.begin(), other.vertices.end());
        for (std::size_t i = 0; i < other.triangles.size(); ++i) {
            const auto& t = other.triangles[i];
            triangles.push_back({t[0] + base, t[1] + base, t[2] + base});
            tags.push_back(i < other.tags.size() ? other.tags[i] : TriTag::Other);
        }
    }
};

namespace detail {

inline std::uint64_t edge_key(int a, int b) {
    return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(a)) << 32) |
           static_cast<std::uint32_t>(b);
}

class PointWelder3 {
public:
    explicit PointWelder3(double tol) : tol_(tol), cell_(tol > 0.0 ? tol * 4.0 : 1.0) {}

    int index_of(const Vec3& p, std::vector<Vec3>& points) {
        if (tol_ <= 0.0) {
            points.push_back(p);
            return static_cast<int>(points.size()) - 1;
        }
        const auto cx = static_cast<std::int64_t>(std::floor(p.x / cell_));
        const auto cy = static_cast<std::int64_t>(std::floor(p.y / cell_));
        const auto cz = static_cast<std::int64_t>(std::floor(p.z / cell_));
        for (std::int64_t dx = -1; dx <= 1; ++dx)
            for (std::int64_t dy = -1; dy <= 1; ++dy)
                for (std::int64_t dz = -1; dz <= 1; ++dz) {
                    auto it = grid_.find(key(cx + dx, cy + dy, cz + dz));
                    if (it == grid_.end()) continue;
                    for (int idx : it->second) {
                        if (norm(points[idx] - p) <= tol_) return idx;
                    }
                }
        int idx = static_cast<int>(points.size());
        points.push_back(p);
        grid_[key(cx, cy, cz)].push_back(idx);
        return idx;
    }

private:
    static std::uint64_t key(std::int64_t x, std::int64_t y, std::int64_t z) {
        return static_cast<std::uint64_t>(x) * 0x9E3779B97F4A7C15ull ^
               static_cast<std::uint64_t>(y) * 0xC2B2AE3D27D4EB4Full ^
               static_cast<std::uint64_t>(z);
    }
    double tol_;
    double cell_;
    std::unordered_map<std::uint64_t, std::vector<int>> grid_;
};

struct UnionFind {
    std::vector<int> parent;
    explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
    int find(int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    }
    void unite(int a, int b) { parent[find(a)] = find(b); }
};

/// Moller-style triangle-triangle intersection. Returns 0 for none/touching,
/// 1 for transversal penetration, 2 for coplanar area overlap.
inline int tri_tri_intersect(const Vec3& a0, const Vec3& a1, const Vec3& a2, const Vec3& b0,
                             const Vec3& b1, const Vec3& b2, double eps) {
    const Vec3 nb = cross(b1 - b0, b2 - b0);
    double da0 = dot(nb, a0 - b0), da1 = dot(nb, a1 - b0), da2 = dot(nb, a2 - b0);
    const double sb = norm(nb);
    if (sb <= 0.0) return 0;
    const double ea = eps * sb;
    if ((da0 > ea && da1 > ea && da2 > ea) || (da0 < -ea && da1 < -ea && da2 < -ea)) return 0;

    const Vec3 na = cross(a1 - a0, a2 - a0);
    double db0 = dot(na, b0 - a0), db1 = dot(na, b1 - a0), db2 = dot(na, b2 - a0);
    const double sa = norm(na);
    if (sa <= 0.0) return 0;
    const double eb = eps * sa;
    if ((db0 > eb && db1 > eb && db2 > eb) || (db0 < -eb && db1 < -eb && db2 < -eb)) return 0;

    const bool coplanar = std::abs(da0) <= ea && std::abs(da1) <= ea && std::abs(da2) <= ea;
    if (!coplanar) {
        // interior penetration needs strict sign changes against both planes;
        // edge or vertex contact on a plane is touching, not intersection
        const bool a_crosses = (da0 > ea || da1 > ea || da2 > ea) &&
                               (da0 < -ea || da1 < -ea || da2 < -ea);
        const bool b_crosses = (db0 > eb || db1 > eb || db2 > eb) &&
                               (db0 < -eb || db1 < -eb || db2 < -eb);
        if (!a_crosses || !b_crosses) return 0;
    }
    if (coplanar) {
        // project both to the dominant plane of nb and test polygon overlap
        const Vec3 n = nb;
        int axis = 2;
        if (std::abs(n.x) >= std::abs(n.y) && std::abs(n.x) >= std::abs(n.z)) axis = 0;
        else if (std::abs(n.y) >= std::abs(n.z)) axis = 1;
        auto pr = [axis](const Vec3& v) -> Vec2 {
            if (axis == 0) return {v.y, v.z};
            if (axis == 1) return {v.x, v.z};
            return {v.x, v.y};
        };
        Polygon pa{pr(a0), pr(a1), pr(a2)};
        Polygon pb{pr(b0), pr(b1), pr(b2)};
        if (polygon_signed_area(pa) < 0.0) std::reverse(pa.begin(), pa.end());
        if (polygon_signed_area(pb) < 0.0) std::reverse(pb.begin(), pb.end());
        Polygon inter = convex_intersection(pa, pb);
        const double min_area = std::min(polygon_area(pa), polygon_area(pb));
        if (inter.size() >= 3 && polygon_area(inter) > std::max(1e-12 * min_area, eps * eps))
            return 2;
        return 0;
    }

    // intersection intervals on the common line
    const Vec3 dline = cross(na, nb);
    auto interval = [&](const Vec3& p0, const Vec3& p1, const Vec3& p2, double d0, double d1,
                        double d2, double& lo, double& hi) {
        double proj0 = dot(dline, p0), proj1 = dot(dline, p1), proj2 = dot(dline, p2);
        lo = std::numeric_limits<double>::max();
        hi = std::numeric_limits<double>::lowest();
        auto edge = [&](double pa_, double pb_, double dda, double ddb) {
            if ((dda > 0.0 && ddb > 0.0) || (dda < 0.0 && ddb < 0.0)) return;
            if (dda == ddb) return;
            const double t = dda / (dda - ddb);
            const double v = pa_ + t * (pb_ - pa_);
            lo = std::min(lo, v);
            hi = std::max(hi, v);
        };
        edge(proj0, proj1, d0, d1);
        edge(proj1, proj2, d1, d2);
        edge(proj2, proj0, d2, d0);
        return lo <= hi;
    };
    double alo, ahi, blo, bhi;
    if (!interval(a0, a1, a2, da0, da1, da2, alo, ahi)) return 0;
    if (!interval(b0, b1, b2, db0, db1, db2, blo, bhi)) return 0;
    const double overlap = std::min(ahi, bhi) - std::max(alo, blo);
    const double span = std::max(ahi - alo, bhi - blo);
    if (overlap > std::max(eps * norm(dline), 1e-9 * span)) return 1;
    return 0;
}

} // namespace detail

struct ValidationReport {
    bool closed = false;
    bool oriented = false;
    bool euler_ok = false; // V - E + F == 2 for every component
    int components = 0;
    int boundary_edges = 0;
    int nonmanifold_edges = 0;
    int degenerate_triangles = 0;
    double min_area = 0.0;
    int self_intersections = 0;
    std::vector<int> euler_per_component;

    bool valid() const {
        return closed && oriented && euler_ok && degenerate_triangles == 0 &&
               self_intersections == 0;
    }
};

/// Exact combinatorial checks plus a box-culled sampled self-intersection test.
/// Coplanar contact between different closed components is not an intersection.
inline ValidationReport validate(const SurfaceMesh& mesh, bool test_self_intersections = true) {
    ValidationReport rep;
    if (mesh.triangles.empty()) return rep;

    std::unordered_map<std::uint64_t, int> directed;
    std::unordered_map<std::uint64_t, int> undirected;
    directed.reserve(mesh.triangles.size() * 3);
    for (const auto& t : mesh.triangles) {
        for (int e = 0; e < 3; ++e) {
            const int a = t[e], b = t[(e + 1) % 3];
            directed[detail::edge_key(a, b)]++;
            undirected[detail::edge_key(std::min(a, b), std::max(a, b))]++;
        }
    }
    bool closed = true, oriented = true;
    for (const auto& [key, cnt] : undirected) {
        if (cnt == 1) {
            ++rep.boundary_edges;
            closed = false;
        } else if (cnt != 2) {
            ++rep.nonmanifold_edges;
            closed = false;
        }
    }
    for (const auto& [key, cnt] : directed) {
        if (cnt > 1) oriented = false;
    }
    if (closed) {
        for (const auto& [key, cnt] : directed) {
            const int a = static_cast<int>(key >> 32);
            const int b = static_cast<int>(key & 0xffffffffu);
            auto it = directed.find(detail::edge_key(b, a));
            if (it == directed.end() || it->second != 1 || cnt != 1) oriented = false;
        }
    }
    rep.closed = closed;
    rep.oriented = oriented;

    // connected components over shared undirected edges
    detail::UnionFind uf(mesh.triangles.size());
    {
        std::unordered_map<std::uint64_t, int> first_tri;
        for (std::size_t i = 0; i < mesh.triangles.size(); ++i) {
            const auto& t = mesh.triangles[i];
            for (int e = 0; e < 3; ++e) {
                const int a = t[e], b = t[(e + 1) % 3];
                const auto key = detail::edge_key(std::min(a, b), std::max(a, b));
                auto [it, inserted] = first_tri.emplace(key, static_cast<int>(i));
                if (!inserted) uf.unite(it->second, static_cast<int>(i));
            }
        }
    }
    std::unordered_map<int, int> comp_ids;
    std::vector<int> tri_comp(mesh.triangles.size());
    for (std::size_t i = 0; i < mesh.triangles.size(); ++i) {
        const int root = uf.find(static_cast<int>(i));
        auto [it, inserted] = comp_ids.emplace(root, static_cast<int>(comp_ids.size()));
        tri_comp[i] = it->second;
    }
    rep.components = static_cast<int>(comp_ids.size());

    // Euler characteristic per component
    std::vector<std::unordered_map<int, bool>> comp_verts(rep.components);
    std::vector<std::unordered_map<std::uint64_t, bool>> comp_edges(rep.components);
    std::vector<int> comp_faces(rep.components, 0);
    for (std::size_t i = 0; i < mesh.triangles.size(); ++i) {
        const auto& t = mesh.triangles[i];
        const int c = tri_comp[i];
        ++comp_faces[c];
        for (int e = 0; e < 3; ++e) {
            comp_verts[c][t[e]] = true;
            comp_edges[c][detail::edge_key(std::min(t[e], t[(e + 1) % 3]),
                                           std::max(t[e], t[(e + 1) % 3]))] = true;
        }
    }
    rep.euler_ok = true;
    for (int c = 0; c < rep.components; ++c) {
        const int euler = static_cast<int>(comp_verts[c].size()) -
                          static_cast<int>(comp_edges[c].size()) + comp_faces[c];
        rep.euler_per_component.push_back(euler);
        if (euler != 2) rep.euler_ok = false;
    }

    rep.min_area = std::numeric_limits<double>::max();
    for (std::size_t i = 0; i < mesh.triangles.size(); ++i) {
        const double a = mesh.triangle_area(i);
        rep.min_area = std::min(rep.min_area, a);
        if (!(a > 0.0)) ++rep.degenerate_triangles;
    }

    if (test_self_intersections && mesh.triangles.size() <= 20000) {
        const double eps = 1e-9 * mesh.bounds().diagonal();
        struct Entry {
            Box3 box;
            int tri;
        };
        std::vector<Entry> entries(mesh.triangles.size());
        for (std::size_t i = 0; i < mesh.triangles.size(); ++i) {
            Box3 b;
            for (int v : mesh.triangles[i]) b.expand(mesh.vertices[v]);
            entries[i] = {b, static_cast<int>(i)};
        }
        std::sort(entries.begin(), entries.end(),
                  [](const Entry& a, const Entry& b) { return a.box.lo.x < b.box.lo.x; });
        for (std::size_t i = 0; i < entries.size(); ++i) {
            for (std::size_t j = i + 1; j < entries.size(); ++j) {
                if (entries[j].box.lo.x > entries[i].box.hi.x + eps) break;
                if (!entries[i].box.overlaps(entries[j].box, eps)) continue;
                const auto& ta = mesh.triangles[entries[i].tri];
                const auto& tb = mesh.triangles[entries[j].tri];
                bool share = false;
                for (int u : ta)
                    for (int v : tb)
                        if (u == v) share = true;
                if (share) continue;
                const int kind = detail::tri_tri_intersect(
                    mesh.vertices[ta[0]], mesh.vertices[ta[1]], mesh.vertices[ta[2]],
                    mesh.vertices[tb[0]], mesh.vertices[tb[1]], mesh.vertices[tb[2]], eps);
                if (kind == 1 ||
                    (kind == 2 && tri_comp[entries[i].tri] == tri_comp[entries[j].tri]))
                    ++rep.self_intersections;
            }
        }
    }
    return rep;
}

/// Divergence-theorem volume; positive for outward orientation.
inline double signed_volume(const SurfaceMesh& mesh) {
    if (mesh.empty()) return 0.0;
    ValidationReport rep = validate(mesh, false);
    if (!rep.closed) throw NotClosed("signed_volume: mesh has boundary or non-manifold edges");
    double v = 0.0;
    for (const auto& t : mesh.triangles) {
        v += dot(mesh.vertices[t[0]], cross(mesh.vertices[t[1]], mesh.vertices[t[2]]));
    }
    return v / 6.0;
}

/// Weld vertices within tol and drop triangles collapsed by the weld.
inline SurfaceMesh weld_vertices(const SurfaceMesh& mesh, double tol) {
    SurfaceMesh out;
    detail::PointWelder3 welder(tol);
    std::vector<int> remap(mesh.vertices.size());
    for (std::size_t i = 0; i < mesh.vertices.size(); ++i) {
        remap[i] = welder.index_of(mesh.vertices[i], out.vertices);
    }
    for (std::size_t i = 0; i < mesh.triangles.size(); ++i) {
        const auto& t = mesh.triangles[i];
        const int a = remap[t[0]], b = remap[t[1]], c = remap[t[2]];
        if (a == b || b == c || c == a) continue;
        out.triangles.push_back({a, b, c});
        out.tags.push_back(i < mesh.tags.size() ? mesh.tags[i] : TriTag::Other);
    }
    return out;
}

/// Drop vertices not referenced by any triangle.
inline SurfaceMesh compact(const SurfaceMesh& mesh) {
    SurfaceMesh out;
    std::vector<int> remap(mesh.vertices.size(), -1);
    for (const auto& t : mesh.triangles) {
        for (int v : t) {
            if (remap[v] == -1) {
                remap[v] = static_cast<int>(out.vertices.size());
                out.vertices.push_back(mesh.vertices[v]);
            }
        }
    }
    for (std::size_t i = 0; i < mesh.triangles.size(); ++i) {
        const auto& t = mesh.triangles[i];
        out.triangles.push_back({remap[t[0]], remap[t[1]], remap[t[2]]});
        out.tags.push_back(i < mesh.tags.size() ? mesh.tags[i] : TriTag::Other);
    }
    return out;
}

inline SurfaceMesh make_box(const Vec3& lo, const Vec3& hi) {
    SurfaceMesh m;
    const double xs[2] = {lo.x, hi.x}, ys[2] = {lo.y, hi.y}, zs[2] = {lo.z, hi.z};
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            for (int k = 0; k < 2; ++k) m.add_vertex({xs[i], ys[j], zs[k]});
    auto v = [](int i, int j, int k) { return i * 4 + j * 2 + k; };
    auto quad = [&](int a, int b, int c, int d) {
        m.add_triangle(a, b, c);
        m.add_triangle(a, c, d);
    };
    quad(v(0, 0, 0), v(0, 0, 1), v(0, 1, 1), v(0, 1, 0)); // x = lo
    quad(v(1, 0, 0), v(1, 1, 0), v(1, 1, 1), v(1, 0, 1)); // x = hi
    quad(v(0, 0, 0), v(1, 0, 0), v(1, 0, 1), v(0, 0, 1)); // y = lo
    quad(v(0, 1, 0), v(0, 1, 1), v(1, 1, 1), v(1, 1, 0)); // y = hi
    quad(v(0, 0, 0), v(0, 1, 0), v(1, 1, 0), v(1, 0, 0)); // z = lo
    quad(v(0, 0, 1), v(1, 0, 1), v(1, 1, 1), v(0, 1, 1)); // z = hi
    return m;
}

} // namespace defectforge

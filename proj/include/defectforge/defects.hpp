#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "defectforge/dilation.hpp"
#include "defectforge/errors.hpp"
#include "defectforge/geom.hpp"
#include "defectforge/mesh.hpp"
#include "defectforge/pathing.hpp"
#include "defectforge/random.hpp"
#include "defectforge/strip_triangulation.hpp"
#include "defectforge/tessellation.hpp"

namespace defectforge {

enum class DefectType { Crack, Bulge, BuckleClosed, BuckleOpen, CoatLift, ColdShut };

inline const char* defect_type_name(DefectType t) {
    switch (t) {
    case DefectType::Crack: return "crack";
    case DefectType::Bulge: return "bulge";
    case DefectType::BuckleClosed: return "buckle_closed";
    case DefectType::BuckleOpen: return "buckle_open";
    case DefectType::CoatLift: return "coat_lift";
    case DefectType::ColdShut: return "cold_shut";
    }
    return "unknown";
}

inline std::optional<DefectType> defect_type_from_name(const std::string& s) {
    if (s == "crack") return DefectType::Crack;
    if (s == "bulge") return DefectType::Bulge;
    if (s == "buckle_closed") return DefectType::BuckleClosed;
    if (s == "buckle_open") return DefectType::BuckleOpen;
    if (s == "coat_lift") return DefectType::CoatLift;
    if (s == "cold_shut") return DefectType::ColdShut;
    return std::nullopt;
}

/// Parameters of the elongated defect pipelines. Depth values are measured
/// downward from the surface, elevations upward; both relative to
/// surface_height. Widths are structuring-element half widths.
struct ElongatedDefectParams {
    DefectType type = DefectType::Crack;
    Window window{0.0, 10.0, 0.0, 4.0};
    double gamma = 1.0;
    std::size_t n_generators = 400;
    double width_min = 0.02;
    double width_max = 0.06;
    double depth_min = 0.15; // crack/cold shut depth, bulge/buckle/coat elevation
    double depth_max = 0.45;
    double surface_height = 1.0;
    int branches = 0;
    SplineSpec spline;                  // cold shut only
    double layer_thickness = 0.15;      // coat lift: 2d shift of the path
    double inner_width_ratio = 0.5;     // open buckle: l_N / l_P
    double width_envelope_power = 1.0;  // sin^p taper of the width profile
    double depth_envelope_power = 1.0;
    double short_arc_fraction = 0.01;
    double max_turn_angle = 1.0;        // cold shut smoothness bound (radians)
};

inline ElongatedDefectParams default_params(DefectType type) {
    ElongatedDefectParams p;
    p.type = type;
    p.gamma = 0.1 * p.window.width();
    switch (type) {
    case DefectType::Crack:
        break;
    case DefectType::Bulge:
        p.n_generators = 300;
        p.width_min = 0.15;
        p.width_max = 0.40;
        p.depth_min = 0.08;
        p.depth_max = 0.20;
        break;
    case DefectType::BuckleClosed:
        p.n_generators = 350;
        p.width_min = 0.08;
        p.width_max = 0.20;
        p.depth_min = 0.10;
        p.depth_max = 0.25;
        break;
    case DefectType::BuckleOpen:
        p.n_generators = 350;
        p.width_min = 0.15;
        p.width_max = 0.35;
        p.depth_min = 0.10;
        p.depth_max = 0.25;
        p.inner_width_ratio = 0.5;
        break;
    case DefectType::CoatLift:
        p.n_generators = 350;
        p.width_min = 0.10;
        p.width_max = 0.30;
        p.depth_min = 0.05;
        p.depth_max = 0.15;
        p.layer_thickness = 0.15;
        break;
    case DefectType::ColdShut:
        p.width_min = 0.04;
        p.width_max = 0.10;
        p.depth_min = 0.08;
        p.depth_max = 0.20;
        p.spline.control_count = 5;
        p.spline.discretization_count = 50;
        break;
    }
    return p;
}

inline void validate_params(const ElongatedDefectParams& p) {
    if (!p.window.valid()) throw InvalidParams("params.window: empty window");
    if (!(p.surface_height > 0.0)) throw InvalidParams("params.surface_height: must be > 0");
    if (!(p.width_min > 0.0) || p.width_max < p.width_min)
        throw InvalidParams("params.width_range: need 0 < width_min <= width_max");
    if (!(p.depth_min > 0.0) || p.depth_max < p.depth_min)
        throw InvalidParams("params.depth_range: need 0 < depth_min <= depth_max");
    if (p.type == DefectType::Crack || p.type == DefectType::ColdShut) {
        if (!(p.depth_max < p.surface_height))
            throw InvalidParams("params.depth_range: crack depth must stay below surface_height");
    }
    if (p.type == DefectType::ColdShut) {
        if (p.spline.control_count < 2)
            throw InvalidParams("params.spline.control_count: need >= 2");
        if (p.spline.discretization_count < 5 * p.spline.control_count)
            throw InvalidParams("params.spline.discretization_count: need k+2 >= 5(n+1)");
    } else {
        if (p.n_generators < 2) throw InvalidParams("params.n_generators: need >= 2");
        if (!(p.gamma > 0.0)) throw InvalidParams("params.gamma: must be > 0");
    }
    if (p.type == DefectType::BuckleOpen) {
        if (!(p.inner_width_ratio > 0.0) || !(p.inner_width_ratio < 1.0))
            throw InvalidParams("params.inner_width_ratio: need 0 < ratio < 1");
    }
    if (p.type == DefectType::CoatLift) {
        if (!(p.layer_thickness > 0.0))
            throw InvalidParams("params.layer_thickness: must be > 0");
    }
    if (p.branches < 0) throw InvalidParams("params.branches: must be >= 0");
}

namespace detail {

/// One spine retained for branching: graph vertex ids plus assigned heights.
struct SpineRecord {
    std::vector<int> graph_vertices;
    std::vector<double> heights;
};

struct CrackContext {
    Tessellation tessellation;
    PathGraph graph;
    std::vector<SpineRecord> spines;
};

} // namespace detail

/// A generated defect: closed mesh plus the 2D data used for annotation.
struct DefectInstance {
    DefectType type = DefectType::Crack;
    std::uint64_t seed = 0;
    SurfaceMesh mesh;
    Path spine;
    std::vector<Polygon> footprints;
    ElongatedDefectParams params;
    double max_spine_turn_angle = 0.0;
    bool spine_exits_window = false;
    std::shared_ptr<detail::CrackContext> context; // crack family only
};

namespace detail {

inline std::vector<double> smooth3(std::vector<double> v) {
    if (v.size() < 3) return v;
    std::vector<double> out(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) {
        const double a = v[i == 0 ? 0 : i - 1];
        const double b = v[i];
        const double c = v[std::min(v.size() - 1, i + 1)];
        out[i] = (a + b + c) / 3.0;
    }
    return out;
}

/// Per-arc half widths: sin(pi s)^p taper times a smoothed uniform draw.
inline std::vector<double> sample_arc_widths(RandomStream& stream, const Path& path, double lo,
                                             double hi, double power) {
    const std::size_t k1 = path.arc_count();
    std::vector<double> u(k1);
    for (double& x : u) x = stream.uniform(lo, hi);
    u = smooth3(std::move(u));
    const double total = path.length();
    std::vector<double> widths(k1);
    double cum = 0.0;
    for (std::size_t i = 0; i < k1; ++i) {
        const double len = path.arc_length(i);
        const double s = (cum + 0.5 * len) / total;
        cum += len;
        widths[i] = std::pow(std::sin(3.14159265358979323846 * s), power) * u[i];
    }
    return widths;
}

/// Per-vertex magnitudes (depth or elevation) with a strictly positive floor so
/// spine heights stay strictly off the surface plane.
inline std::vector<double> sample_vertex_magnitudes(RandomStream& stream, const Path& path,
                                                    double lo, double hi, double power,
                                                    double junction_value = 0.0) {
    const std::size_t n = path.vertices.size();
    std::vector<double> u(n);
    for (double& x : u) x = stream.uniform(lo, hi);
    u = smooth3(std::move(u));
    const double total = path.length();
    const double floor_value = 1e-3 * lo;
    std::vector<double> mags(n);
    double cum = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double s = total > 0.0 ? cum / total : 0.0;
        if (i + 1 < n) cum += path.arc_length(i);
        double m = std::pow(std::sin(3.14159265358979323846 * s), power) * u[i];
        m = std::max(m, (1.0 - s) * junction_value);
        mags[i] = std::max(m, floor_value);
    }
    return mags;
}

inline void emit_cap(SurfaceMesh& mesh, int a, int b, int c, double outward_x) {
    const Vec3 n = cross(mesh.vertices[b] - mesh.vertices[a], mesh.vertices[c] - mesh.vertices[a]);
    if (n.x * outward_x >= 0.0) mesh.add_triangle(a, b, c, TriTag::End);
    else mesh.add_triangle(a, c, b, TriTag::End);
}

/// Closed mesh of a two-sided elongated defect: side strips between the spine
/// and both contours, a planar cover at cover_h, and end caps.
inline SurfaceMesh assemble_two_sided(const DilatedPath& dil,
                                      const std::vector<double>& spine_heights, double cover_h,
                                      bool negative) {
    const Path& path = dil.path;
    const std::size_t k2 = path.vertices.size();
    if (spine_heights.size() != k2)
        throw InvalidParams("assemble_two_sided: one height per path vertex required");

    SurfaceMesh mesh;
    std::vector<int> path_idx(k2);
    for (std::size_t i = 0; i < k2; ++i) {
        path_idx[i] = mesh.add_vertex({path.vertices[i], spine_heights[i]});
    }
    std::vector<int> up_idx(dil.upper.contour.size());
    for (std::size_t i = 0; i < dil.upper.contour.size(); ++i) {
        up_idx[i] = mesh.add_vertex({dil.upper.contour[i], cover_h});
    }
    std::vector<int> low_idx(dil.lower.contour.size());
    for (std::size_t i = 0; i < dil.lower.contour.size(); ++i) {
        low_idx[i] = mesh.add_vertex({dil.lower.contour[i], cover_h});
    }
    const bool start_flat = spine_heights.front() == cover_h;
    const bool end_flat = spine_heights.back() == cover_h;
    const int v0_proj = start_flat ? path_idx.front()
                                   : mesh.add_vertex({path.vertices.front(), cover_h});
    const int vend_proj = end_flat ? path_idx.back()
                                   : mesh.add_vertex({path.vertices.back(), cover_h});

    // winding per directed-edge pairing: the cover consumes the upper contour
    // right-to-left and the lower contour left-to-right, the two strips share
    // each path edge in opposite directions
    auto add_strip = [&](const SideDilation& side, const std::vector<int>& cont_idx,
                         bool flip_path_tris) {
        auto tris = triangulate_side(path.arc_count(), side.arcs);
        for (const StripTriangle& t : tris) {
            auto resolve = [&](const StripVertexRef& r) {
                return r.on_path ? path_idx[r.index] : cont_idx[r.index];
            };
            const int a = resolve(t.a), b = resolve(t.b), c = resolve(t.c);
            const int path_vertices = (t.a.on_path ? 1 : 0) + (t.b.on_path ? 1 : 0) +
                                      (t.c.on_path ? 1 : 0);
            const bool flip = (path_vertices == 2) == flip_path_tris;
            if (flip) mesh.add_triangle(a, c, b, TriTag::Strip);
            else mesh.add_triangle(a, b, c, TriTag::Strip);
        }
    };
    add_strip(dil.upper, up_idx, negative);
    add_strip(dil.lower, low_idx, !negative);

    // cover ring, counterclockwise: lower left-to-right, right border up,
    // upper right-to-left, left border down
    std::vector<Vec2> ring;
    std::vector<int> ring_idx;
    auto push_ring = [&](const Vec2& p, int idx) {
        if (!ring.empty() && ring_idx.back() == idx) return;
        ring.push_back(p);
        ring_idx.push_back(idx);
    };
    for (std::size_t i = 0; i < dil.lower.contour.size(); ++i)
        push_ring(dil.lower.contour[i], low_idx[i]);
    push_ring(path.vertices.back(), vend_proj);
    for (std::size_t i = dil.upper.contour.size(); i-- > 0;)
        push_ring(dil.upper.contour[i], up_idx[i]);
    push_ring(path.vertices.front(), v0_proj);
    while (ring_idx.size() > 1 && ring_idx.back() == ring_idx.front()) {
        ring.pop_back();
        ring_idx.pop_back();
    }
    for (const auto& t : triangulate_ring(ring)) {
        if (negative) mesh.add_triangle(ring_idx[t[0]], ring_idx[t[1]], ring_idx[t[2]],
                                        TriTag::Surface);
        else mesh.add_triangle(ring_idx[t[0]], ring_idx[t[2]], ring_idx[t[1]], TriTag::Surface);
    }

    if (!start_flat) {
        emit_cap(mesh, path_idx.front(), up_idx.front(), v0_proj, -1.0);
        emit_cap(mesh, path_idx.front(), v0_proj, low_idx.front(), -1.0);
    }
    if (!end_flat) {
        emit_cap(mesh, path_idx.back(), up_idx.back(), vend_proj, 1.0);
        emit_cap(mesh, path_idx.back(), vend_proj, low_idx.back(), 1.0);
    }
    return compact(mesh);
}

/// 2D footprint polygon of a two-sided dilation (the cover ring).
inline Polygon footprint_polygon(const DilatedPath& dil) {
    Polygon ring;
    auto push = [&](const Vec2& p) {
        if (ring.empty() || distance(ring.back(), p) > 0.0) ring.push_back(p);
    };
    for (const Vec2& p : dil.lower.contour) push(p);
    push(dil.path.vertices.back());
    for (std::size_t i = dil.upper.contour.size(); i-- > 0;) push(dil.upper.contour[i]);
    push(dil.path.vertices.front());
    while (ring.size() > 1 && distance(ring.front(), ring.back()) == 0.0) ring.pop_back();
    return ring;
}

/// Spine path through the tessellation between random border vertices.
struct SpinePick {
    Path path;
    std::vector<int> graph_vertices;
};

inline SpinePick pick_spine(RandomStream& stream, const Tessellation& tess, const PathGraph& graph,
                            double short_arc_fraction) {
    auto [start, end] = pick_endpoints(stream, tess);
    auto res = shortest_path(graph, start, end);
    // recover graph indices after the short-arc filter by nearest match
    Path filtered = filter_short_arcs(res.path, short_arc_fraction);
    SpinePick pick;
    pick.path = filtered;
    pick.graph_vertices.reserve(filtered.vertices.size());
    for (const Vec2& v : filtered.vertices) {
        int best = -1;
        double bd = std::numeric_limits<double>::max();
        for (std::size_t g = 0; g < graph.vertices.size(); ++g) {
            const double d = norm2(graph.vertices[g] - v);
            if (d < bd) {
                bd = d;
                best = static_cast<int>(g);
            }
        }
        pick.graph_vertices.push_back(best);
    }
    return pick;
}

inline bool spine_exits_window(const Path& p, const Window& w) {
    for (const Vec2& v : p.vertices) {
        if (v.y < w.w1min || v.y > w.w1max) return true;
    }
    return false;
}

} // namespace detail

/// Cold crack / hot tear: jagged tessellation spine, negative heights, closed mesh.
inline DefectInstance generate_crack(RandomStream& stream, const ElongatedDefectParams& params);

/// Bulge: positive counterpart of the crack with an eye-shaped footprint.
inline DefectInstance generate_bulge(RandomStream& stream, const ElongatedDefectParams& params);

namespace detail {

inline DefectInstance generate_crack_like(RandomStream& stream,
                                          const ElongatedDefectParams& params, bool negative,
                                          double cover_h) {
    validate_params(params);
    const Window& w = params.window;
    auto tess = build_voronoi(stream, w, params.gamma, params.n_generators);
    PathGraph graph = make_path_graph(tess);
    SpinePick pick = pick_spine(stream, tess, graph, params.short_arc_fraction);

    auto widths = sample_arc_widths(stream, pick.path, params.width_min, params.width_max,
                                    params.width_envelope_power);
    auto mags = sample_vertex_magnitudes(stream, pick.path, params.depth_min, params.depth_max,
                                         params.depth_envelope_power);
    std::vector<double> heights(mags.size());
    for (std::size_t i = 0; i < mags.size(); ++i) {
        heights[i] = negative ? cover_h - mags[i] : cover_h + mags[i];
    }

    DilatedPath dil = dilate(pick.path, widths, w.w0min, w.w0max);
    DefectInstance inst;
    inst.type = params.type;
    inst.params = params;
    inst.seed = stream.seed();
    inst.spine = pick.path;
    inst.mesh = assemble_two_sided(dil, heights, cover_h, negative);
    inst.footprints.push_back(footprint_polygon(dil));
    inst.max_spine_turn_angle = max_turning_angle(pick.path);
    inst.spine_exits_window = spine_exits_window(pick.path, w);
    inst.context = std::make_shared<CrackContext>();
    inst.context->tessellation = std::move(tess);
    inst.context->graph = std::move(graph);
    inst.context->spines.push_back({pick.graph_vertices, heights});
    return inst;
}

} // namespace detail

inline DefectInstance generate_crack(RandomStream& stream, const ElongatedDefectParams& params) {
    ElongatedDefectParams p = params;
    p.type = DefectType::Crack;
    return detail::generate_crack_like(stream, p, true, p.surface_height);
}

inline DefectInstance generate_bulge(RandomStream& stream, const ElongatedDefectParams& params) {
    ElongatedDefectParams p = params;
    if (p.type != DefectType::BuckleClosed) p.type = DefectType::Bulge;
    return detail::generate_crack_like(stream, p, false, p.surface_height);
}

/// Closed buckle: the bulge pipeline under a buckle parameter preset.
inline DefectInstance generate_buckle_closed(RandomStream& stream,
                                             const ElongatedDefectParams& params) {
    ElongatedDefectParams p = params;
    p.type = DefectType::BuckleClosed;
    return generate_bulge(stream, p);
}

/// Cold shut / rat tail: smooth spline spine, crack-style negative heights.
inline DefectInstance generate_cold_shut(RandomStream& stream,
                                         const ElongatedDefectParams& params) {
    ElongatedDefectParams p = params;
    p.type = DefectType::ColdShut;
    validate_params(p);
    const Window& w = p.window;
    Path path = spline_path(stream, w, p.spline);

    auto widths = detail::sample_arc_widths(stream, path, p.width_min, p.width_max,
                                            p.width_envelope_power);
    auto mags = detail::sample_vertex_magnitudes(stream, path, p.depth_min, p.depth_max,
                                                 p.depth_envelope_power);
    std::vector<double> heights(mags.size());
    for (std::size_t i = 0; i < mags.size(); ++i) heights[i] = p.surface_height - mags[i];

    DilatedPath dil = dilate(path, widths, w.w0min, w.w0max);
    DefectInstance inst;
    inst.type = DefectType::ColdShut;
    inst.params = p;
    inst.seed = stream.seed();
    inst.spine = path;
    inst.mesh = detail::assemble_two_sided(dil, heights, p.surface_height, true);
    inst.footprints.push_back(detail::footprint_polygon(dil));
    inst.max_spine_turn_angle = max_turning_angle(path);
    inst.spine_exits_window = detail::spine_exits_window(path, w);
    return inst;
}

namespace detail {

/// Coat lift mesh from explicit contour heights (testable directly): the path
/// and its downward shift stay at surface height, the upper contour is lifted.
inline SurfaceMesh assemble_coat_lift(const DilatedPath& dil,
                                      const std::vector<double>& contour_heights,
                                      double layer_thickness, double h) {
    const Path& path = dil.path;
    const SideDilation& up = dil.upper;
    if (contour_heights.size() != up.contour.size())
        throw InvalidParams("assemble_coat_lift: one height per contour vertex required");
    if (!(layer_thickness > 0.0))
        throw InvalidParams("assemble_coat_lift: layer thickness must be > 0");
    bool lifted = false;
    for (double z : contour_heights) {
        if (z < h) throw InvalidParams("assemble_coat_lift: contour heights must be >= h");
        if (z > h) lifted = true;
    }
    if (!lifted) throw InvalidParams("assemble_coat_lift: zero elevation everywhere");

    SurfaceMesh mesh;
    const std::size_t k2 = path.vertices.size();
    std::vector<int> path_idx(k2), shift_idx(k2);
    for (std::size_t i = 0; i < k2; ++i) {
        path_idx[i] = mesh.add_vertex({path.vertices[i], h});
        shift_idx[i] =
            mesh.add_vertex({path.vertices[i] - Vec2{0.0, layer_thickness}, h});
    }
    std::vector<int> up_idx(up.contour.size());
    for (std::size_t i = 0; i < up.contour.size(); ++i) {
        up_idx[i] = mesh.add_vertex({up.contour[i], contour_heights[i]});
    }

    // T_up: underside between the path and the lifted contour; triangles with
    // two path vertices flip so path edges pair against T_low and contour
    // edges against T_cover
    for (const StripTriangle& t : triangulate_side(path.arc_count(), up.arcs)) {
        auto resolve = [&](const StripVertexRef& r) {
            return r.on_path ? path_idx[r.index] : up_idx[r.index];
        };
        const int path_vertices = (t.a.on_path ? 1 : 0) + (t.b.on_path ? 1 : 0) +
                                  (t.c.on_path ? 1 : 0);
        if (path_vertices == 2)
            mesh.add_triangle(resolve(t.a), resolve(t.c), resolve(t.b), TriTag::Up);
        else
            mesh.add_triangle(resolve(t.a), resolve(t.b), resolve(t.c), TriTag::Up);
    }
    // T_low: flat band between the path and its shift, facing down
    for (std::size_t i = 0; i + 1 < k2; ++i) {
        mesh.add_triangle(path_idx[i], path_idx[i + 1], shift_idx[i], TriTag::Low);
        mesh.add_triangle(shift_idx[i + 1], shift_idx[i], path_idx[i + 1], TriTag::Low);
    }
    // T_cover: top sheet between the lifted contour and the shifted path
    std::vector<Vec2> shifted(k2);
    for (std::size_t i = 0; i < k2; ++i) shifted[i] = path.vertices[i] - Vec2{0.0, layer_thickness};
    for (const ZipTriangle& t : zip_triangulate(up.contour, shifted)) {
        auto resolve = [&](const ZipVertexRef& r) {
            return r.on_upper ? up_idx[r.index] : shift_idx[r.index];
        };
        mesh.add_triangle(resolve(t.a), resolve(t.b), resolve(t.c), TriTag::Cover);
    }
    // end caps
    emit_cap(mesh, path_idx.front(), up_idx.front(), shift_idx.front(), -1.0);
    emit_cap(mesh, path_idx.back(), up_idx.back(), shift_idx.back(), 1.0);
    return compact(mesh);
}

} // namespace detail

/// Coat lift: one-sided elevation with a shifted copy of the path at surface
/// height forming the underside of the protruding sheet.
inline DefectInstance generate_coat_lift(RandomStream& stream,
                                         const ElongatedDefectParams& params) {
    ElongatedDefectParams p = params;
    p.type = DefectType::CoatLift;
    validate_params(p);
    const Window& w = p.window;
    auto tess = build_voronoi(stream, w, p.gamma, p.n_generators);
    PathGraph graph = make_path_graph(tess);
    detail::SpinePick pick = detail::pick_spine(stream, tess, graph, p.short_arc_fraction);

    auto widths = detail::sample_arc_widths(stream, pick.path, p.width_min, p.width_max,
                                            p.width_envelope_power);
    DilatedPath dil = dilate(pick.path, widths, w.w0min, w.w0max);

    // contour heights: sampled like a depth profile along the contour arclength
    const auto& contour = dil.upper.contour;
    std::vector<double> u(contour.size());
    for (double& x : u) x = stream.uniform(p.depth_min, p.depth_max);
    u = detail::smooth3(std::move(u));
    double total = 0.0;
    for (std::size_t i = 0; i + 1 < contour.size(); ++i) total += distance(contour[i],
                                                                            contour[i + 1]);
    std::vector<double> heights(contour.size());
    const double floor_value = 1e-3 * p.depth_min;
    double cum = 0.0;
    for (std::size_t i = 0; i < contour.size(); ++i) {
        const double s = total > 0.0 ? cum / total : 0.0;
        if (i + 1 < contour.size()) cum += distance(contour[i], contour[i + 1]);
        const double e = std::pow(std::sin(3.14159265358979323846 * s), p.depth_envelope_power) *
                         u[i];
        heights[i] = p.surface_height + std::max(e, floor_value);
    }

    DefectInstance inst;
    inst.type = DefectType::CoatLift;
    inst.params = p;
    inst.seed = stream.seed();
    inst.spine = pick.path;
    inst.mesh = detail::assemble_coat_lift(dil, heights, p.layer_thickness, p.surface_height);
    // footprint: lifted contour joined with the shifted path
    Polygon ring;
    for (std::size_t i = pick.path.vertices.size(); i-- > 0;) {
        ring.push_back(pick.path.vertices[i] - Vec2{0.0, p.layer_thickness});
    }
    for (const Vec2& c : contour) ring.push_back(c);
    inst.footprints.push_back(dedupe_polygon(ring, 0.0));
    inst.max_spine_turn_angle = max_turning_angle(pick.path);
    inst.spine_exits_window = detail::spine_exits_window(pick.path, w);
    return inst;
}

} // namespace defectforge

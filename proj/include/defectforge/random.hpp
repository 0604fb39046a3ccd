#pragma once

#include <cstdint>
#include <vector>

#include "defectforge/errors.hpp"
#include "defectforge/geom.hpp"

namespace defectforge {

namespace detail {

inline std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9E3779B97F4A7C15ull);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

inline std::uint64_t rotl64(std::uint64_t v, int k) { return (v << k) | (v >> (64 - k)); }

} // namespace detail

/// Deterministic seedable random source (xoshiro256++ seeded via SplitMix64).
/// Same (seed, stream_id) gives the same sample sequence on every platform;
/// distinct stream ids derived from one seed never share state.
class RandomStream {
public:
    explicit RandomStream(std::uint64_t seed, std::uint64_t stream_id = 0)
        : seed_(seed), stream_id_(stream_id) {
        std::uint64_t sm = seed ^ (0xD2B74407B1CE6E93ull * (stream_id + 1));
        for (auto& w : state_) w = detail::splitmix64(sm);
    }

    std::uint64_t seed() const { return seed_; }
    std::uint64_t stream_id() const { return stream_id_; }

    std::uint64_t next_u64() {
        std::uint64_t* s = state_;
        const std::uint64_t result = detail::rotl64(s[0] + s[3], 23) + s[0];
        const std::uint64_t t = s[1] << 17;
        s[2] ^= s[0];
        s[3] ^= s[1];
        s[1] ^= s[2];
        s[0] ^= s[3];
        s[2] ^= t;
        s[3] = detail::rotl64(s[3], 45);
        return result;
    }

    /// Uniform double in [0, 1) with 53-bit resolution.
    double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    /// Uniform double in [lo, hi).
    double uniform(double lo, double hi) { return lo + next_double() * (hi - lo); }

    /// Uniform index in [0, n). Consumes one draw.
    std::size_t uniform_index(std::size_t n) {
        return static_cast<std::size_t>((static_cast<unsigned __int128>(next_u64()) * n) >> 64);
    }

    /// Derive an independent stream from this stream's seed and the given id.
    RandomStream split(std::uint64_t stream_id) const { return RandomStream(seed_, stream_id); }

private:
    std::uint64_t seed_;
    std::uint64_t stream_id_;
    std::uint64_t state_[4];
};

struct Rect {
    double x0 = 0.0, x1 = 0.0, y0 = 0.0, y1 = 0.0;
    double width() const { return x1 - x0; }
    double height() const { return y1 - y0; }
};

/// n i.i.d. uniform points in an axis-aligned rectangle. Consumes exactly 2n draws.
inline std::vector<Vec2> uniform_points(RandomStream& stream, const Rect& region, std::size_t n) {
    if (n == 0) throw EmptyRequest("uniform_points: n must be >= 1");
    if (!(region.width() > 0.0) || !(region.height() > 0.0))
        throw InvalidRegion("uniform_points: region must have positive width and height");
    std::vector<Vec2> pts;
    pts.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        double x = stream.uniform(region.x0, region.x1);
        double y = stream.uniform(region.y0, region.y1);
        pts.push_back({x, y});
    }
    return pts;
}

/// n uniform points strictly inside a convex polygon, by rejection from its bounding box.
inline std::vector<Vec2> uniform_in_polygon(RandomStream& stream, const Polygon& polygon,
                                            std::size_t n) {
    if (polygon.size() < 3 || polygon_area(polygon) <= 0.0)
        throw InvalidRegion("uniform_in_polygon: degenerate polygon");
    Polygon ccw = polygon;
    if (polygon_signed_area(ccw) < 0.0) std::reverse(ccw.begin(), ccw.end());
    Box2 bb = bounding_box(ccw);
    std::vector<Vec2> pts;
    pts.reserve(n);
    while (pts.size() < n) {
        Vec2 p{stream.uniform(bb.lo.x, bb.hi.x), stream.uniform(bb.lo.y, bb.hi.y)};
        bool strict = true;
        for (std::size_t i = 0, m = ccw.size(); i < m; ++i) {
            const Vec2& a = ccw[i];
            const Vec2& b = ccw[(i + 1) % m];
            if (cross(b - a, p - a) <= 0.0) {
                strict = false;
                break;
            }
        }
        if (strict) pts.push_back(p);
    }
    return pts;
}

} // namespace defectforge

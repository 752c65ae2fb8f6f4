#include "cues/coverage.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>

namespace cues {
namespace {

struct Segment {
    Vec2 a;
    Vec2 b;
    bool join_a;  // interior vertex at a: rounded join
};

// Merge consecutive collinear active samples so a straight run at a fine
// time step costs one segment.
std::vector<Segment> active_segments(const std::vector<TrackPoint>& track) {
    std::vector<Segment> segs;
    for (std::size_t i = 1; i < track.size(); ++i) {
        if (!track[i - 1].active || !track[i].active) continue;
        const Vec2 a = track[i - 1].position;
        const Vec2 b = track[i].position;
        if ((b - a).squaredNorm() == 0.0) continue;
        if (!segs.empty() && segs.back().b == a) {
            Segment& last = segs.back();
            const Vec2 d0 = last.b - last.a;
            const Vec2 d1 = b - a;
            const double cross = d0.x() * d1.y() - d0.y() * d1.x();
            if (std::abs(cross) <= 1e-12 * d0.norm() * d1.norm() && d0.dot(d1) > 0.0) {
                last.b = b;
                continue;
            }
            segs.push_back({a, b, true});
        } else {
            segs.push_back({a, b, false});
        }
    }
    return segs;
}

}  // namespace

double swept_area(const std::vector<TrackPoint>& track, double swath, double cell) {
    if (!(swath > 0.0) || !(cell > 0.0)) throw InvalidArgument("swept_area: swath and cell must be positive");
    const auto segs = active_segments(track);
    if (segs.empty()) return 0.0;

    const double half = 0.5 * swath;
    double xmin = std::numeric_limits<double>::infinity(), ymin = xmin;
    double xmax = -xmin, ymax = -xmin;
    for (const auto& s : segs) {
        xmin = std::min({xmin, s.a.x(), s.b.x()});
        xmax = std::max({xmax, s.a.x(), s.b.x()});
        ymin = std::min({ymin, s.a.y(), s.b.y()});
        ymax = std::max({ymax, s.a.y(), s.b.y()});
    }
    // Grid anchored at multiples of `cell` so aligned tracks rasterize exactly.
    const auto i0 = static_cast<long>(std::floor((xmin - half) / cell)) - 1;
    const auto j0 = static_cast<long>(std::floor((ymin - half) / cell)) - 1;
    const auto i1 = static_cast<long>(std::ceil((xmax + half) / cell)) + 1;
    const auto j1 = static_cast<long>(std::ceil((ymax + half) / cell)) + 1;
    const long nx = i1 - i0;
    const long ny = j1 - j0;
    // Each cell carries a 4x4 mask of sample points so oblique tracks do not
    // alias against the grid; the union is taken per sample.
    constexpr int kSub = 4;
    std::vector<std::uint16_t> covered(static_cast<std::size_t>(nx * ny), 0);
    constexpr std::uint16_t kFull = 0xFFFF;

    for (const auto& s : segs) {
        const Vec2 d = s.b - s.a;
        const double len2 = d.squaredNorm();
        const double len = std::sqrt(len2);
        const long ia = static_cast<long>(std::floor((std::min(s.a.x(), s.b.x()) - half) / cell)) - i0;
        const long ib = static_cast<long>(std::ceil((std::max(s.a.x(), s.b.x()) + half) / cell)) - i0;
        const long ja = static_cast<long>(std::floor((std::min(s.a.y(), s.b.y()) - half) / cell)) - j0;
        const long jb = static_cast<long>(std::ceil((std::max(s.a.y(), s.b.y()) + half) / cell)) - j0;
        for (long j = std::max(0L, ja); j < std::min(ny, jb + 1); ++j) {
            for (long i = std::max(0L, ia); i < std::min(nx, ib + 1); ++i) {
                auto& c = covered[static_cast<std::size_t>(j * nx + i)];
                if (c == kFull) continue;
                for (int sy = 0; sy < kSub; ++sy) {
                    for (int sx = 0; sx < kSub; ++sx) {
                        const std::uint16_t bit = static_cast<std::uint16_t>(1u << (sy * kSub + sx));
                        if (c & bit) continue;
                        const Vec2 p((static_cast<double>(i + i0) + (sx + 0.5) / kSub) * cell,
                                     (static_cast<double>(j + j0) + (sy + 0.5) / kSub) * cell);
                        const Vec2 rel = p - s.a;
                        const double along = rel.dot(d) / len2;
                        bool in = false;
                        if (along >= 0.0 && along < 1.0) {
                            in = std::abs(d.x() * rel.y() - d.y() * rel.x()) / len <= half;
                        } else if (s.join_a) {
                            in = rel.norm() <= half;
                        }
                        if (in) c |= bit;
                    }
                }
            }
        }
    }
    long samples = 0;
    for (auto c : covered) samples += std::popcount(c);
    return static_cast<double>(samples) * cell * cell / (kSub * kSub);
}

CoverageReport coverage_from_track(const std::vector<TrackPoint>& track, double swath, double cell) {
    CoverageReport r;
    for (std::size_t i = 1; i < track.size(); ++i) {
        if (!track[i - 1].active || !track[i].active) continue;
        r.active_time += track[i].t - track[i - 1].t;
        r.distance_traveled += (track[i].position - track[i - 1].position).norm();
    }
    if (!(r.active_time > 0.0)) throw EmptyReport("no active search segment in the track");
    r.area_searched = swept_area(track, swath, cell);
    r.area_per_hour = r.area_searched / r.active_time * 3600.0;
    return r;
}

}  // namespace cues

#include <doctest.h>

#include <cmath>

#include "cues/coverage.hpp"
#include "cues/rng.hpp"

using namespace cues;

namespace {

std::vector<TrackPoint> straight(double speed, double duration, double dt, double heading = 0.0) {
    std::vector<TrackPoint> t;
    const int n = static_cast<int>(std::lround(duration / dt));
    const Vec2 dir(std::cos(heading), std::sin(heading));
    for (int k = 0; k <= n; ++k) t.push_back({k * dt, speed * k * dt * dir, true});
    return t;
}

// Union of flat-ended corridors plus discs at interior vertices, by point
// sampling on a fine grid.
double corridor_area_oracle(const std::vector<Vec2>& path, double swath, double h) {
    const double half = swath / 2.0;
    double x0 = 1e300, y0 = 1e300, x1 = -1e300, y1 = -1e300;
    for (const auto& p : path) {
        x0 = std::min(x0, p.x() - half);
        y0 = std::min(y0, p.y() - half);
        x1 = std::max(x1, p.x() + half);
        y1 = std::max(y1, p.y() + half);
    }
    long inside = 0;
    for (double x = x0 + h / 2; x < x1; x += h) {
        for (double y = y0 + h / 2; y < y1; y += h) {
            const Vec2 q(x, y);
            bool in = false;
            for (std::size_t k = 1; k < path.size() && !in; ++k) {
                const Vec2 a = path[k - 1], b = path[k];
                const Vec2 d = b - a;
                const double s = (q - a).dot(d) / d.squaredNorm();
                if (s >= 0.0 && s <= 1.0 && std::abs(d.x() * (q - a).y() - d.y() * (q - a).x()) / d.norm() <= half) in = true;
                if (k >= 2 && (q - a).norm() <= half) in = true;
            }
            inside += in;
        }
    }
    return inside * h * h;
}

}  // namespace

TEST_CASE("straight runs give speed times swath") {
    struct Case {
        double speed, expected;
    };
    for (const Case c : {Case{0.1, 360.0}, Case{0.3, 1080.0}, Case{0.05, 180.0}, Case{0.2, 720.0}}) {
        const auto r = coverage_from_track(straight(c.speed, 3600.0, 1.0), 1.0);
        CHECK(r.area_per_hour == doctest::Approx(c.expected).epsilon(0.01));
        CHECK(r.active_time == doctest::Approx(3600.0));
        CHECK(r.distance_traveled == doctest::Approx(c.speed * 3600.0));
    }
}

TEST_CASE("grid-aligned straight run is exact") {
    const auto r = coverage_from_track(straight(0.1, 3600.0, 0.5), 1.0);
    CHECK(r.area_searched == doctest::Approx(360.0).epsilon(1e-12));
    CHECK(r.area_per_hour == doctest::Approx(360.0).epsilon(1e-12));
}

TEST_CASE("oblique runs stay within the discretization tolerance") {
    for (double heading : {0.3, 0.785, 2.0, -1.1}) {
        const auto r = coverage_from_track(straight(0.2, 600.0, 1.0, heading), 1.0);
        CHECK(r.area_searched == doctest::Approx(120.0).epsilon(0.01));
    }
}

TEST_CASE("overlapping passes are counted once") {
    std::vector<TrackPoint> t;
    for (int k = 0; k <= 100; ++k) t.push_back({double(k), {double(k), 0.0}, true});
    for (int k = 1; k <= 100; ++k) t.push_back({100.0 + k, {100.0 - k, 0.0}, true});
    const auto r = coverage_from_track(t, 2.0);
    CHECK(r.area_searched == doctest::Approx(200.0).epsilon(0.01));
    CHECK(r.distance_traveled == doctest::Approx(200.0));
}

TEST_CASE("inactive samples are excluded") {
    auto t = straight(1.0, 100.0, 1.0);
    for (std::size_t i = 50; i < t.size(); ++i) t[i].active = false;
    const auto r = coverage_from_track(t, 1.0);
    CHECK(r.active_time == doctest::Approx(49.0));
    CHECK(r.area_searched == doctest::Approx(49.0).epsilon(1e-9));
}

TEST_CASE("random polylines match a fine-grid corridor oracle") {
    SeededRng rng(71, RngStream::Test);
    for (int trial = 0; trial < 10; ++trial) {
        std::vector<Vec2> path{{0.0, 0.0}};
        for (int k = 0; k < 4; ++k) path.push_back(path.back() + Vec2(rng.gaussian(10.0), rng.gaussian(10.0)));
        std::vector<TrackPoint> t;
        for (std::size_t k = 0; k < path.size(); ++k) t.push_back({double(k), path[k], true});
        const double swath = 1.0 + 3.0 * rng.uniform();
        const double got = swept_area(t, swath, 0.05);
        const double want = corridor_area_oracle(path, swath, 0.05);
        CHECK(got == doctest::Approx(want).epsilon(0.02));
    }
}

TEST_CASE("empty tracks") {
    CHECK_THROWS_AS(coverage_from_track({}, 1.0), EmptyReport);
    std::vector<TrackPoint> idle{{0.0, {0, 0}, false}, {1.0, {1, 0}, false}};
    CHECK_THROWS_AS(coverage_from_track(idle, 1.0), EmptyReport);
    CHECK(swept_area({}, 1.0) == 0.0);
    CHECK_THROWS_AS(swept_area({}, 0.0), InvalidArgument);
}

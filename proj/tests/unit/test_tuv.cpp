#include <doctest.h>

#include <cmath>

#include "cues/rng.hpp"
#include "cues/tuv.hpp"
#include "harness.hpp"
#include "oracles.hpp"

using namespace cues;

TEST_CASE("tension examples") {
    Towline line;
    line.unstretched_length = 30.0;
    CHECK(towline_tension({29.9, 0, 0}, {0, 0, 0}, 1.0, line) == Vec3::Zero());

    line.stiffness = 500.0;
    line.damping = 0.0;
    const Vec3 T = towline_tension({30.1, 0, 0}, {0, 0, 0}, 0.0, line);
    CHECK(T.norm() == doctest::Approx(50.0).epsilon(1e-9));
    CHECK(T.x() > 0.0);  // pulls the TUV toward the ASV
}

TEST_CASE("damping only pulls while the line stretches") {
    Towline line;
    line.unstretched_length = 10.0;
    line.stiffness = 100.0;
    line.damping = 20.0;
    const double stretching = towline_tension({11, 0, 0}, {0, 0, 0}, 0.5, line).x();
    const double relaxing = towline_tension({11, 0, 0}, {0, 0, 0}, -0.5, line).x();
    CHECK(stretching == doctest::Approx(110.0));
    CHECK(relaxing == doctest::Approx(100.0));
}

TEST_CASE("line is tension-only") {
    SeededRng rng(41, RngStream::Test);
    Towline line;
    for (int i = 0; i < 10000; ++i) {
        const Vec3 a(rng.gaussian(20.0), rng.gaussian(20.0), rng.gaussian(20.0));
        const Vec3 b(rng.gaussian(20.0), rng.gaussian(20.0), rng.gaussian(20.0));
        const double rate = rng.gaussian(2.0);
        const Vec3 T = towline_tension(a, b, rate, line);
        if ((a - b).norm() <= line.unstretched_length) {
            CHECK(T == Vec3::Zero());
        } else {
            // Never pushes: the force on the TUV points toward the ASV.
            CHECK(T.dot(a - b) >= 0.0);
        }
    }
}

TEST_CASE("coincident attach points are degenerate") {
    CHECK_THROWS_AS(towline_tension({1, 1, 1}, {1, 1, 1}, 0.0, Towline{}), DegenerateGeometry);
}

TEST_CASE("separation rate") {
    CHECK(separation_rate({10, 0, 0}, {1, 0, 0}, {0, 0, 0}, {0, 0, 0}) == 1.0);
    CHECK(separation_rate({10, 0, 0}, {0, 1, 0}, {0, 0, 0}, {0, 0, 0}) == 0.0);
}

TEST_CASE("hydrofoil examples") {
    TuvParams p;
    const auto zero = hydrofoil_forces(Vec3::Zero(), p);
    CHECK(zero.lift == 0.0);
    CHECK(zero.drag == 0.0);

    p.lift_coefficient = 0.5;
    const auto f = hydrofoil_forces({2.0, 0.0, 0.0}, p);
    CHECK(f.lift == doctest::Approx(0.5 * 1025.0 * 4.0 * 0.1 * 0.5));
    CHECK(f.lift == doctest::Approx(102.5));
    CHECK(f.drag == doctest::Approx(16.4));
    CHECK(f.force.x() == doctest::Approx(-16.4));
    CHECK(f.force.z() == doctest::Approx(102.5));  // z down: depressor
}

TEST_CASE("lift is perpendicular to the flow and drag anti-parallel") {
    SeededRng rng(42, RngStream::Test);
    TuvParams p;
    p.lift_coefficient = 0.4;
    for (int i = 0; i < 1000; ++i) {
        const Vec3 v(rng.gaussian(2.0), rng.gaussian(2.0), rng.gaussian(0.5));
        const auto f = hydrofoil_forces(v, p);
        const Vec3 drag = -f.drag * v.normalized();
        const Vec3 lift = f.force - drag;
        CHECK(std::abs(lift.dot(v)) < 1e-12 * std::max(1.0, f.lift * v.norm()));
        CHECK(drag.dot(v) == doctest::Approx(-f.drag * v.norm()).epsilon(1e-12));
        CHECK(lift.norm() == doctest::Approx(f.lift).epsilon(1e-12));
        CHECK(lift.z() >= 0.0);
    }
}

TEST_CASE("dynamics examples") {
    TuvParams p;
    p.net_buoyancy_fraction = 0.0;
    CHECK(tuv_dynamics({}, p, Vec3::Zero(), Vec3::Zero()) == Vec3::Zero());

    p.mass = 8.0;
    p.added_mass = 2.0;
    const Vec3 a = tuv_dynamics({}, p, {10.0, 0.0, 0.0}, Vec3::Zero());
    CHECK(a.x() == doctest::Approx(1.0));
    CHECK(a.y() == 0.0);
    CHECK(a.z() == 0.0);

    // Default trim sinks slowly.
    CHECK(tuv_dynamics({}, TuvParams{}, Vec3::Zero(), Vec3::Zero()).z() > 0.0);
}

TEST_CASE("steady tow converges to the static equilibrium depth") {
    TuvParams p;
    Towline line;
    line.unstretched_length = 30.0;
    const double speed = 1.5;
    // From a start 1 m below the surface the transient takes about 120 s.
    const auto r = harness::steady_tow(p, line, speed, 200.0);
    const oracle::TowCase c{speed,           p.water_density, p.foil_area, p.lift_coefficient, p.drag_coefficient,
                            p.bluff_drag_area, p.mass,        p.net_buoyancy_fraction, kGravity, line.stiffness,
                            line.unstretched_length};
    const double depth = oracle::tow_equilibrium_depth(c);
    INFO("sim depth " << r.depth << " oracle " << depth);
    CHECK(std::abs(r.vertical_speed) < 1e-3);
    CHECK(std::abs(r.depth - depth) < 0.01);
    CHECK(r.max_action_reaction == 0.0);
}

TEST_CASE("untethered neutral body drifts with the current") {
    TuvParams p;
    p.net_buoyancy_fraction = 0.0;
    const Vec3 current(0.3, -0.1, 0.0);
    using V6 = Eigen::Matrix<double, 6, 1>;
    V6 x = V6::Zero();
    auto f = [&](const V6& s) {
        V6 d;
        d.head<3>() = s.tail<3>();
        d.tail<3>() = tuv_dynamics({s.head<3>(), s.tail<3>()}, p, Vec3::Zero(), current);
        return d;
    };
    // Quadratic drag: the relative speed decays like 1 / t.
    for (int i = 0; i < 100000; ++i) x = rk4_step(x, f, 0.05);
    CHECK((x.tail<3>() - current).norm() < 1e-3);
}

TEST_CASE("winch") {
    Towline line;
    line.unstretched_length = 30.0;
    CHECK(winch_set_length(line, 30.0, 1.0, 0.01).unstretched_length == 30.0);
    CHECK(winch_set_length(line, 10.0, 0.5, 1.0).unstretched_length == 29.5);
    line.unstretched_length = 10.0;
    CHECK(winch_set_length(line, 10.2, 1.0, 1.0).unstretched_length == doctest::Approx(10.2));
    CHECK_THROWS_AS(winch_set_length(line, 35.0, 1.0, 1.0), OutOfRange);
    CHECK_THROWS_AS(winch_set_length(line, 0.0, 1.0, 1.0), OutOfRange);
}

TEST_CASE("parameter validation") {
    TuvParams p;
    CHECK_NOTHROW(p.validate());
    p.foil_area = 0.0;
    CHECK_THROWS_AS(p.validate(), InvalidArgument);
    Towline t;
    t.unstretched_length = -1.0;
    CHECK_THROWS_AS(t.validate(), InvalidArgument);
}

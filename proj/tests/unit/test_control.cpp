#include <doctest.h>

#include <cmath>

#include "cues/control.hpp"
#include "cues/rng.hpp"

using namespace cues;

TEST_CASE("pid examples") {
    PidController p({2.0, 0.0, 0.0});
    CHECK(pid_step(p, 3.0, 0.01).output == 6.0);

    PidController z({1.0, 1.0, 1.0});
    for (int i = 0; i < 100; ++i) {
        auto s = pid_step(z, 0.0, 0.01);
        CHECK(s.output == 0.0);
        z = s.controller;
    }

    // Trapezoid sum with a zero error before the first step:
    // 0.5 * (1 + 0) * 0.1 + 9 * 0.1 = 0.95.
    PidController c({1.0, 0.5, 0.0});
    double out = 0.0;
    for (int i = 0; i < 10; ++i) {
        auto s = pid_step(c, 1.0, 0.1);
        out = s.output;
        c = s.controller;
    }
    CHECK(out == doctest::Approx(1.475).epsilon(1e-12));
}

TEST_CASE("derivative acts on error and is zero on the first step") {
    PidController c({0.0, 0.0, 2.0});
    auto s1 = pid_step(c, 5.0, 0.1);
    CHECK(s1.output == 0.0);
    auto s2 = pid_step(s1.controller, 6.0, 0.1);
    CHECK(s2.output == doctest::Approx(20.0));
}

TEST_CASE("anti-windup clamps the integral under saturation") {
    PidController c({1.0, 10.0, 0.0}, {-1.0, 1.0}, {-0.5, 0.5});
    for (int i = 0; i < 100000; ++i) {
        auto s = pid_step(c, 100.0, 0.01);
        CHECK(s.output <= 1.0);
        c = s.controller;
        REQUIRE(c.integral_state <= 0.5);
    }
    CHECK(c.integral_state == 0.5);
}

TEST_CASE("pid rejects non-positive dt") {
    CHECK_THROWS_AS(pid_step(PidController({1, 0, 0}), 1.0, 0.0), InvalidArgument);
}

TEST_CASE("closed loop on first-order plant tracks the analytic response") {
    // y' = -y + u, u = 2 e + int e, e = 1 - y, y(0) = 0:
    // y'' + 3 y' + y = 1, y'(0) = 2.
    const double s1 = (-3.0 + std::sqrt(5.0)) / 2.0;
    const double s2 = (-3.0 - std::sqrt(5.0)) / 2.0;
    const double A = (2.0 + s2) / (s1 - s2);
    const double B = -1.0 - A;
    auto y_exact = [&](double t) { return 1.0 + A * std::exp(s1 * t) + B * std::exp(s2 * t); };

    auto max_error = [&](double dt) {
        PidController c({2.0, 1.0, 0.0});
        double y = 0.0, worst = 0.0;
        const int n = static_cast<int>(std::lround(10.0 / dt));
        for (int k = 0; k < n; ++k) {
            const auto s = pid_step(c, 1.0 - y, dt);
            c = s.controller;
            y = s.output + (y - s.output) * std::exp(-dt);  // exact plant step under held u
            worst = std::max(worst, std::abs(y - y_exact((k + 1) * dt)));
        }
        return worst;
    };
    const double e1 = max_error(0.002);
    const double e2 = max_error(0.001);
    // Sample-and-hold discretization: the error is first order in dt.
    CHECK(e2 < 1e-3);
    CHECK(e1 / e2 == doctest::Approx(2.0).epsilon(0.05));
}

TEST_CASE("guidance examples") {
    GuidanceSetpoint loiter;
    loiter.mode = GuidanceMode::Loiter;
    loiter.target = {3.0, 4.0};
    auto a = guidance_step(loiter, {3.0, 4.0}, 0.7);
    CHECK(a.speed_cmd == 0.0);
    CHECK(a.heading_error == 0.0);

    GuidanceSetpoint wp;
    wp.target = {0.0, 50.0};
    auto b = guidance_step(wp, {0.0, 0.0}, 0.0);
    CHECK(b.heading_error == doctest::Approx(kPi / 2.0));
    CHECK(b.speed_cmd == wp.cruise_speed);
    CHECK_FALSE(b.arrived);

    auto c = guidance_step(wp, {0.0, 48.0}, 0.0);
    CHECK(c.arrived);
    CHECK(c.speed_cmd == 0.0);
}

TEST_CASE("loiter approach speed is proportional and capped") {
    GuidanceSetpoint sp;
    sp.mode = GuidanceMode::Loiter;
    sp.approach_gain = 0.5;
    sp.cruise_speed = 2.0;
    CHECK(guidance_step(sp, {2.0, 0.0}, 0.0).speed_cmd == doctest::Approx(1.0));
    CHECK(guidance_step(sp, {100.0, 0.0}, 0.0).speed_cmd == 2.0);
    // Target behind: heading error is pi.
    CHECK(std::abs(guidance_step(sp, {2.0, 0.0}, 0.0).heading_error) == doctest::Approx(kPi));
}

TEST_CASE("heading error is always wrapped") {
    SeededRng rng(21, RngStream::Test);
    GuidanceSetpoint sp;
    for (int i = 0; i < 1000; ++i) {
        sp.target = {rng.gaussian(100.0), rng.gaussian(100.0)};
        const auto c = guidance_step(sp, {rng.gaussian(100.0), rng.gaussian(100.0)}, rng.gaussian(10.0));
        CHECK(c.heading_error > -kPi);
        CHECK(c.heading_error <= kPi);
    }
}

TEST_CASE("path follow aims along the leg") {
    GuidanceSetpoint sp;
    sp.mode = GuidanceMode::PathFollow;
    sp.leg_start = {0.0, 0.0};
    sp.target = {0.0, 100.0};
    sp.lookahead = 10.0;
    // Off the leg by 10 m to the east, heading north: aim point (0, 10) is 45 deg to the left.
    const auto c = guidance_step(sp, {10.0, 0.0}, kPi / 2.0);
    CHECK(c.heading_error == doctest::Approx(kPi / 4.0));
}

TEST_CASE("setpoint validation") {
    GuidanceSetpoint sp;
    CHECK_NOTHROW(sp.validate());
    sp.arrival_radius = 0.0;
    CHECK_THROWS_AS(sp.validate(), InvalidArgument);
}

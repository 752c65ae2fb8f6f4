#pragma once

// PID regulation and waypoint / loiter / path-follow guidance for the ASV.

#include <limits>

#include "cues/world.hpp"

namespace cues {

struct Limits {
    double min = -std::numeric_limits<double>::infinity();
    double max = std::numeric_limits<double>::infinity();

    double clamp(double v) const { return v < min ? min : (v > max ? max : v); }
};

struct PidGains {
    double kp = 0.0;
    double ki = 0.0;
    double kd = 0.0;
};

/// PID state as a value. The derivative acts on the error; the integral is
/// accumulated with the trapezoid rule and clamped to `integral_limits`.
struct PidController {
    PidGains gains;
    Limits output_limits;
    Limits integral_limits;
    double integral_state = 0.0;
    double prev_error = 0.0;
    bool has_prev = false;

    PidController() = default;
    PidController(PidGains g, Limits out = {}, Limits integ = {});
};

struct PidStep {
    double output;
    PidController controller;
};

PidStep pid_step(const PidController& ctrl, double error, double dt);

enum class GuidanceMode { Waypoint, Loiter, PathFollow };

struct GuidanceSetpoint {
    GuidanceMode mode = GuidanceMode::Waypoint;
    Vec2 target = Vec2::Zero();
    Vec2 leg_start = Vec2::Zero();  // path-follow only
    double arrival_radius = 3.0;    // [m]
    double cruise_speed = 2.0;      // [m/s]
    double deadband_radius = 1.0;   // [m] loiter only
    double approach_gain = 0.5;     // [1/s] loiter speed per metre of offset
    double lookahead = 10.0;        // [m] path-follow only

    void validate() const;
};

struct GuidanceCommand {
    double heading_error = 0.0;  // [rad] desired minus estimated heading, wrapped
    double speed_cmd = 0.0;      // [m/s]
    bool arrived = false;
};

/// Heading and speed demand from an estimated pose (x, y, psi).
GuidanceCommand guidance_step(const GuidanceSetpoint& sp, const Vec2& position, double heading);

}  // namespace cues

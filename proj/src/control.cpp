#include "cues/control.hpp"

#include <algorithm>

namespace cues {

PidController::PidController(PidGains g, Limits out, Limits integ)
    : gains(g), output_limits(out), integral_limits(integ) {
    if (out.min > out.max) throw InvalidArgument("PidController: output limits out of order");
    if (integ.min > integ.max) throw InvalidArgument("PidController: integral limits out of order");
}

PidStep pid_step(const PidController& ctrl, double error, double dt) {
    if (!(dt > 0.0)) throw InvalidArgument("pid_step: dt must be positive");
    PidController next = ctrl;
    next.integral_state = ctrl.integral_limits.clamp(ctrl.integral_state + 0.5 * (error + ctrl.prev_error) * dt);
    const double derivative = ctrl.has_prev ? (error - ctrl.prev_error) / dt : 0.0;
    next.prev_error = error;
    next.has_prev = true;
    const double raw = ctrl.gains.kp * error + ctrl.gains.ki * next.integral_state + ctrl.gains.kd * derivative;
    return {ctrl.output_limits.clamp(raw), next};
}

void GuidanceSetpoint::validate() const {
    if (!(arrival_radius > 0.0)) throw InvalidArgument("GuidanceSetpoint: arrival_radius must be positive");
    if (!(cruise_speed >= 0.0)) throw InvalidArgument("GuidanceSetpoint: cruise_speed must be >= 0");
    if (!(deadband_radius >= 0.0)) throw InvalidArgument("GuidanceSetpoint: deadband_radius must be >= 0");
}

GuidanceCommand guidance_step(const GuidanceSetpoint& sp, const Vec2& position, double heading) {
    GuidanceCommand cmd;
    const Vec2 to_target = sp.target - position;
    const double dist = to_target.norm();
    cmd.arrived = dist < sp.arrival_radius;
    auto bearing_error = [&](const Vec2& d) { return wrap_angle(std::atan2(d.y(), d.x()) - heading); };

    switch (sp.mode) {
        case GuidanceMode::Waypoint:
            if (!cmd.arrived) {
                cmd.heading_error = bearing_error(to_target);
                cmd.speed_cmd = sp.cruise_speed;
            }
            break;
        case GuidanceMode::Loiter:
            // Inside the dead band the current heading is held and the craft
            // is asked to stop.
            if (dist > sp.deadband_radius) {
                cmd.heading_error = bearing_error(to_target);
                cmd.speed_cmd = std::min(sp.cruise_speed, sp.approach_gain * dist);
            }
            break;
        case GuidanceMode::PathFollow: {
            if (cmd.arrived) break;
            const Vec2 leg = sp.target - sp.leg_start;
            const double len = leg.norm();
            Vec2 aim = sp.target;
            if (len > 0.0) {
                const Vec2 dir = leg / len;
                const double along = std::clamp((position - sp.leg_start).dot(dir), 0.0, len);
                const double ahead = std::min(len, along + sp.lookahead);
                aim = sp.leg_start + ahead * dir;
            }
            cmd.heading_error = bearing_error(aim - position);
            cmd.speed_cmd = sp.cruise_speed;
            break;
        }
    }
    return cmd;
}

}  // namespace cues

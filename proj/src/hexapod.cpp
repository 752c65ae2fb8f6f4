#include "cues/hexapod.hpp"

#include <algorithm>

#include <Eigen/Geometry>

namespace cues {

void LegGeometry::validate() const {
    if (!(l1 > 0.0) || !(l2 > 0.0)) throw InvalidArgument("LegGeometry: segment lengths must be positive");
}

Vec3 leg_fk(const LegConfiguration& cfg, const LegGeometry& geom) {
    using Eigen::AngleAxisd;
    using Eigen::Translation3d;
    // Pitch about -y so a positive angle raises the segment (z up).
    const Eigen::Affine3d t1(AngleAxisd(cfg.coxa, Vec3::UnitZ()));
    const Eigen::Affine3d t2 = Eigen::Affine3d(AngleAxisd(-cfg.femur, Vec3::UnitY())) * Translation3d(geom.l1, 0.0, 0.0);
    const Eigen::Affine3d t3(AngleAxisd(-cfg.knee, Vec3::UnitY()));
    const Vec3 p_end(geom.l2, 0.0, 0.0);
    return t1 * t2 * t3 * p_end;
}

LegConfiguration leg_ik(const Vec3& p, const LegGeometry& geom) {
    const double l1 = geom.l1;
    const double l2 = geom.l2;
    const double d = std::hypot(p.x(), p.y());
    const double reach = std::hypot(d, p.z());
    if (reach > l1 + l2 || reach < std::abs(l1 - l2)) {
        throw WorkspaceViolation("foot target at radius " + std::to_string(reach) + " m is outside the leg workspace",
                                 reach);
    }
    LegConfiguration cfg;
    cfg.coxa = std::atan2(p.y(), p.x());
    const double c = std::clamp((d * d + p.z() * p.z() - l1 * l1 - l2 * l2) / (2.0 * l1 * l2), -1.0, 1.0);
    cfg.knee = std::acos(c);
    if (geom.elbow_down) cfg.knee = -cfg.knee;
    cfg.femur = std::atan2(p.z(), d) - std::atan2(l2 * std::sin(cfg.knee), l1 + l2 * std::cos(cfg.knee));

    if (cfg.knee < geom.knee_limits.min || cfg.knee > geom.knee_limits.max) {
        throw JointLimitError("knee (joint 2) angle " + std::to_string(cfg.knee) + " rad outside its limits", 2);
    }
    if (cfg.femur < geom.femur_limits.min || cfg.femur > geom.femur_limits.max) {
        throw JointLimitError("femur (joint 3) angle " + std::to_string(cfg.femur) + " rad outside its limits", 3);
    }
    return cfg;
}

Vec3 GaitPhase::closing_swing_velocity(const Vec3& v_stance, double duty_factor) {
    return -v_stance * (duty_factor / (1.0 - duty_factor));
}

Vec3 gait_foot_position(const GaitPhase& g, double t) {
    const bool in_stance = t >= 0.0 && t <= g.t_end;
    const bool in_swing = t >= g.t_end && t <= g.period;
    if (g.phase == LegPhase::Stance && !in_stance) {
        throw PhaseSequencingError("stance position requested at t = " + std::to_string(t) + " outside [0, t_end]");
    }
    if (g.phase == LegPhase::Swing && !in_swing) {
        throw PhaseSequencingError("swing position requested at t = " + std::to_string(t) + " outside [t_end, period]");
    }
    if (g.phase == LegPhase::Stance) return g.start + g.v_stance * t;

    const Vec3 stance_end = g.start + g.v_stance * g.t_end;
    Vec3 p = stance_end + g.v_swing * (t - g.t_end);
    if (g.lift_height != 0.0) {
        const double s = (t - g.t_end) / (g.period - g.t_end);
        p.z() += 4.0 * g.lift_height * s * (1.0 - s);
    }
    return p;
}

TripodSchedule tripod_schedule(double t, double period, double duty_factor) {
    if (!(period > 0.0)) throw InvalidArgument("tripod_schedule: period must be positive");
    if (!(duty_factor > 0.0 && duty_factor < 1.0)) throw InvalidArgument("tripod_schedule: duty factor must be in (0, 1)");
    TripodSchedule out;
    out.stability_warning = duty_factor < 0.5;
    const double t_end = duty_factor * period;
    for (int j = 0; j < 6; ++j) {
        const double offset = (j % 2 == 0) ? 0.0 : 0.5 * period;
        double tau = std::fmod(t + offset, period);
        if (tau < 0.0) tau += period;
        out.cycle_time[j] = tau;
        out.phase[j] = tau < t_end ? LegPhase::Stance : LegPhase::Swing;
        if (out.phase[j] == LegPhase::Stance) ++out.stance_count;
    }
    return out;
}

double TerrainSpeeds::for_terrain(TerrainClass c) const {
    switch (c) {
        case TerrainClass::Sand: return sand;
        case TerrainClass::Rock: return rock;
        case TerrainClass::Mud: return mud;
    }
    return sand;
}

void HexapodParams::validate() const {
    leg.validate();
    if (!(stride_length > 0.0)) throw InvalidArgument("HexapodParams: stride_length must be positive");
    if (!(duty_factor > 0.0 && duty_factor < 1.0)) throw InvalidArgument("HexapodParams: duty_factor must be in (0, 1)");
    if (!(max_turn_rate >= 0.0)) throw InvalidArgument("HexapodParams: max_turn_rate must be >= 0");
    if (!(speeds.sand > 0.0 && speeds.rock > 0.0 && speeds.mud > 0.0)) {
        throw InvalidArgument("HexapodParams: terrain speeds must be positive");
    }
}

HexapodState hexapod_at_rest(const Vec2& position, double heading, const HexapodParams& params) {
    HexapodState s;
    s.position = position;
    s.heading = wrap_angle(heading);
    const LegConfiguration nominal = leg_ik(params.nominal_foot, params.leg);
    s.legs.fill(nominal);
    return s;
}

HexapodState body_advance(const HexapodState& state, double heading_cmd, double dt, TerrainClass terrain,
                          const HexapodParams& params, double speed_fraction) {
    if (!(dt > 0.0)) throw InvalidArgument("body_advance: dt must be positive");
    const double terrain_speed = params.speeds.for_terrain(terrain);
    const double speed = terrain_speed * std::clamp(speed_fraction, 0.0, 1.0);
    const double max_turn = params.max_turn_rate * dt;
    const double turn = std::clamp(wrap_angle(heading_cmd - state.heading), -max_turn, max_turn);
    const double yaw_rate = turn / dt;

    const double period = params.stride_length / terrain_speed;
    const double gait_time = state.gait_time + dt;
    const TripodSchedule sched = tripod_schedule(gait_time, period, params.duty_factor);

    HexapodState next = state;
    next.terrain = terrain;
    next.fault.reset();
    const Vec2 nominal_xy(params.nominal_foot.x(), params.nominal_foot.y());
    for (int j = 0; j < 6; ++j) {
        const Frame2D& mount = params.mounts[j];
        // Foot velocity relative to the body while planted: -(v + w x r).
        const Vec2 r_foot = mount.to_nav(nominal_xy);
        const Vec2 v_body(speed - yaw_rate * r_foot.y(), yaw_rate * r_foot.x());
        const Vec2 v_leg = rotate_nav_to_body(-v_body, mount.heading);

        GaitPhase g;
        g.leg = j;
        g.period = period;
        g.duty_factor = params.duty_factor;
        g.t_end = params.duty_factor * period;
        g.v_stance = Vec3(v_leg.x(), v_leg.y(), 0.0);
        g.v_swing = GaitPhase::closing_swing_velocity(g.v_stance, params.duty_factor);
        g.start = params.nominal_foot - 0.5 * g.t_end * g.v_stance;
        g.lift_height = params.lift_height;
        g.phase = sched.phase[j];
        try {
            next.legs[j] = leg_ik(gait_foot_position(g, sched.cycle_time[j]), params.leg);
        } catch (const Error& e) {
            HexapodState halted = state;
            halted.fault = "leg " + std::to_string(j) + ": " + e.what();
            return halted;
        }
    }
    next.gait_time = gait_time;
    next.heading = wrap_angle(state.heading + turn);
    next.position = state.position + speed * dt * Vec2(std::cos(next.heading), std::sin(next.heading));
    return next;
}

}  // namespace cues

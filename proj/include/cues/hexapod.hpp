#pragma once

// Six-legged seabed robot: per-leg forward/inverse kinematics, stance/swing
// foot trajectories, tripod scheduling and kinematic body locomotion.

#include <array>
#include <optional>
#include <string>

#include "cues/control.hpp"
#include "cues/environment.hpp"
#include "cues/world.hpp"

namespace cues {

/// Joint angles of one leg.
///
/// The inverse-kinematics closed form (coxa = atan2(y, x), knee = acos(...),
/// femur = atan2(z, d) - atan2(l2 sin knee, l1 + l2 cos knee)) makes `knee`
/// the angle between the two segments and `femur` the elevation of the first
/// segment above the leg's horizontal; the forward chain is laid out to match.
struct LegConfiguration {
    double coxa = 0.0;   // joint 1: yaw about the vertical hip axis
    double knee = 0.0;   // joint 2: second segment relative to the first
    double femur = 0.0;  // joint 3: first-segment elevation
};

struct LegGeometry {
    double l1 = 0.08;  // [m] first segment
    double l2 = 0.12;  // [m] second segment
    Limits knee_limits{-kPi / 2.0, kPi / 2.0};
    Limits femur_limits{-kPi / 2.0, kPi / 2.0};
    bool elbow_down = false;  // false: principal acos branch

    void validate() const;
};

/// Foot position in the leg-base frame (x out of the hip, z up).
Vec3 leg_fk(const LegConfiguration& cfg, const LegGeometry& geom);

/// Throws WorkspaceViolation outside |l1 - l2| <= r <= l1 + l2 and
/// JointLimitError when a solved angle breaks its limit.
LegConfiguration leg_ik(const Vec3& p_foot, const LegGeometry& geom);

enum class LegPhase { Stance, Swing };

/// One gait cycle of one leg, with t measured from stance onset:
/// stance on [0, t_end], swing on [t_end, period].
struct GaitPhase {
    int leg = 0;
    LegPhase phase = LegPhase::Stance;
    Vec3 start = Vec3::Zero();           // foot position at stance onset
    Vec3 v_stance = Vec3::Zero();        // [m/s]
    Vec3 v_swing = Vec3::Zero();         // [m/s]
    double t_end = 0.5;                  // [s]
    double period = 1.0;                 // [s]
    double duty_factor = 0.5;
    double lift_height = 0.0;            // [m] parabolic swing clearance, 0 = pure linear swing

    /// Swing velocity that brings the foot back to `start` at the end of the cycle.
    static Vec3 closing_swing_velocity(const Vec3& v_stance, double duty_factor);
};

Vec3 gait_foot_position(const GaitPhase& phase, double t);

struct TripodSchedule {
    std::array<LegPhase, 6> phase{};
    std::array<double, 6> cycle_time{};  // time since that leg's stance onset
    int stance_count = 0;
    bool stability_warning = false;      // duty factor < 0.5
};

/// Legs {0, 2, 4} and {1, 3, 5} alternate with a half-period offset.
TripodSchedule tripod_schedule(double t, double period, double duty_factor);

struct TerrainSpeeds {
    double sand = 0.2;  // [m/s]
    double rock = 0.1;
    double mud = 0.15;

    double for_terrain(TerrainClass c) const;
};

struct HexapodParams {
    LegGeometry leg;
    /// Hip mounts in the body frame; legs 0-2 left front-to-rear, 3-5 right rear-to-front.
    std::array<Frame2D, 6> mounts{
        Frame2D{{0.12, 0.08}, kPi / 4.0},    Frame2D{{0.0, 0.10}, kPi / 2.0},
        Frame2D{{-0.12, 0.08}, 3.0 * kPi / 4.0}, Frame2D{{-0.12, -0.08}, -3.0 * kPi / 4.0},
        Frame2D{{0.0, -0.10}, -kPi / 2.0},   Frame2D{{0.12, -0.08}, -kPi / 4.0},
    };
    Vec3 nominal_foot{0.15, 0.0, -0.06};  // leg frame
    double stride_length = 0.08;          // [m] body advance per gait cycle
    double duty_factor = 0.5;
    double lift_height = 0.03;            // [m]
    double max_turn_rate = 0.3;           // [rad/s]
    TerrainSpeeds speeds;

    void validate() const;
};

struct HexapodState {
    Vec2 position = Vec2::Zero();
    double heading = 0.0;
    std::array<LegConfiguration, 6> legs{};
    TerrainClass terrain = TerrainClass::Sand;
    double gait_time = 0.0;
    std::optional<std::string> fault;
};

/// Standing pose at `position` with every foot at its nominal point.
HexapodState hexapod_at_rest(const Vec2& position, double heading, const HexapodParams& params);

/// Advance the body one step at the terrain speed (scaled by speed_fraction
/// in [0, 1]) while slewing heading toward heading_cmd. Foot targets come
/// from the tripod gait and are solved with leg_ik; any IK failure leaves
/// the body where it was and records the fault.
HexapodState body_advance(const HexapodState& state, double heading_cmd, double dt, TerrainClass terrain,
                          const HexapodParams& params, double speed_fraction = 1.0);

}  // namespace cues

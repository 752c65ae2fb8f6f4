#pragma once

// Planar surface-vehicle model: pose kinematics, rigid-body dynamics with
// the skew-symmetric Coriolis coupling, and twin-thruster allocation.

#include <Eigen/Dense>

#include "cues/world.hpp"

namespace cues {

/// Full-pose record of the ASV. Only (x, y, psi, u, v, r) evolve; the
/// remaining fields are carried unchanged for log completeness.
struct VehicleState3DOF {
    double x = 0.0;    // [m] navigation frame
    double y = 0.0;    // [m]
    double psi = 0.0;  // [rad] in (-pi, pi]
    double u = 0.0;    // [m/s] surge
    double v = 0.0;    // [m/s] sway
    double r = 0.0;    // [rad/s] yaw rate

    double z = 0.0;
    double phi = 0.0;
    double theta = 0.0;
    double w = 0.0;
    double p = 0.0;
    double q = 0.0;

    Vec2 position() const { return {x, y}; }
    Vec2 body_velocity() const { return {u, v}; }
    bool finite() const;
};

using AsvVector = Eigen::Matrix<double, 6, 1>;

/// (x, y, psi, u, v, r) of a state.
AsvVector to_vector(const VehicleState3DOF& s);
/// Writes the six active fields back, wrapping psi; inert fields come from `inert`.
VehicleState3DOF from_vector(const AsvVector& v, const VehicleState3DOF& inert = {});

struct AsvParams {
    double m11 = 50.0;                  // [kg] surge mass incl. added mass
    double m22 = 60.0;                  // [kg] sway mass incl. added mass
    double m33 = 20.0;                  // [kg m^2] yaw inertia incl. added inertia
    double thruster_half_spacing = 0.35;  // [m]
    double max_thrust_per_motor = 40.0;   // [N]

    void validate() const;
};

/// Linear hull damping (-d11 u, -d22 v, -d33 r) on water-relative velocity.
/// Zero by default so the bare rigid-body model stays conservative.
struct LinearDamping {
    double d11 = 0.0;  // [N s/m]
    double d22 = 0.0;  // [N s/m]
    double d33 = 0.0;  // [N m s/rad]
};

struct BodyWrench {
    double X = 0.0;  // [N]
    double Y = 0.0;  // [N]
    double N = 0.0;  // [N m]

    BodyWrench& operator+=(const BodyWrench& o) {
        X += o.X;
        Y += o.Y;
        N += o.N;
        return *this;
    }
    friend BodyWrench operator+(BodyWrench a, const BodyWrench& b) { return a += b; }
    bool finite() const { return std::isfinite(X) && std::isfinite(Y) && std::isfinite(N); }
};

struct PoseRate {
    double x_dot = 0.0;
    double y_dot = 0.0;
    double psi_dot = 0.0;
};

struct BodyAcceleration {
    double u_dot = 0.0;
    double v_dot = 0.0;
    double r_dot = 0.0;
};

PoseRate asv_kinematics(const VehicleState3DOF& s);

/// Solves M nu_dot + C(nu) nu = tau for nu_dot with
/// C = [[0, -m33 r, m22 v], [m33 r, 0, -m11 u], [-m22 v, m11 u, 0]].
BodyAcceleration asv_dynamics(const VehicleState3DOF& s, const AsvParams& params,
                              const BodyWrench& wrench);

/// Time derivative of (x, y, psi, u, v, r) under a fixed body wrench.
AsvVector asv_derivative(const AsvVector& state, const AsvParams& params, const BodyWrench& wrench);

/// 0.5 (m11 u^2 + m22 v^2 + m33 r^2).
double kinetic_energy(const VehicleState3DOF& s, const AsvParams& params);

struct ThrustAllocation {
    double left = 0.0;   // [N]
    double right = 0.0;  // [N]
    BodyWrench realized;
    bool saturated = false;
};

/// Splits a surge force / yaw moment demand over the two hull thrusters and
/// clamps each to the motor limit. The realized wrench has Y = 0.
ThrustAllocation allocate_differential_thrust(double surge_cmd, double yaw_cmd, const AsvParams& params);

}  // namespace cues

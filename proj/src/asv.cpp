#include "cues/asv.hpp"

#include <algorithm>

namespace cues {

bool VehicleState3DOF::finite() const {
    for (double f : {x, y, psi, u, v, r, z, phi, theta, w, p, q}) {
        if (!std::isfinite(f)) return false;
    }
    return true;
}

AsvVector to_vector(const VehicleState3DOF& s) {
    AsvVector v;
    v << s.x, s.y, s.psi, s.u, s.v, s.r;
    return v;
}

VehicleState3DOF from_vector(const AsvVector& v, const VehicleState3DOF& inert) {
    VehicleState3DOF s = inert;
    s.x = v(0);
    s.y = v(1);
    s.psi = wrap_angle(v(2));
    s.u = v(3);
    s.v = v(4);
    s.r = v(5);
    return s;
}

void AsvParams::validate() const {
    if (!(m11 > 0.0)) throw InvalidArgument("AsvParams: m11 must be positive");
    if (!(m22 > 0.0)) throw InvalidArgument("AsvParams: m22 must be positive");
    if (!(m33 > 0.0)) throw InvalidArgument("AsvParams: m33 must be positive");
    if (!(thruster_half_spacing > 0.0)) throw InvalidArgument("AsvParams: thruster_half_spacing must be positive");
    if (!(max_thrust_per_motor > 0.0)) throw InvalidArgument("AsvParams: max_thrust_per_motor must be positive");
}

PoseRate asv_kinematics(const VehicleState3DOF& s) {
    const double c = std::cos(s.psi);
    const double sn = std::sin(s.psi);
    return {c * s.u - sn * s.v, sn * s.u + c * s.v, s.r};
}

BodyAcceleration asv_dynamics(const VehicleState3DOF& s, const AsvParams& p, const BodyWrench& w) {
    // C(nu) nu, row by row, exactly as the matrix is laid out.
    const double c1 = -p.m33 * s.r * s.v + p.m22 * s.v * s.r;
    const double c2 = p.m33 * s.r * s.u - p.m11 * s.u * s.r;
    const double c3 = -p.m22 * s.v * s.u + p.m11 * s.u * s.v;
    return {(w.X - c1) / p.m11, (w.Y - c2) / p.m22, (w.N - c3) / p.m33};
}

AsvVector asv_derivative(const AsvVector& x, const AsvParams& params, const BodyWrench& wrench) {
    VehicleState3DOF s;
    s.x = x(0);
    s.y = x(1);
    s.psi = x(2);
    s.u = x(3);
    s.v = x(4);
    s.r = x(5);
    const PoseRate k = asv_kinematics(s);
    const BodyAcceleration a = asv_dynamics(s, params, wrench);
    AsvVector d;
    d << k.x_dot, k.y_dot, k.psi_dot, a.u_dot, a.v_dot, a.r_dot;
    return d;
}

double kinetic_energy(const VehicleState3DOF& s, const AsvParams& p) {
    return 0.5 * (p.m11 * s.u * s.u + p.m22 * s.v * s.v + p.m33 * s.r * s.r);
}

ThrustAllocation allocate_differential_thrust(double surge_cmd, double yaw_cmd, const AsvParams& params) {
    const double b = params.thruster_half_spacing;
    const double lim = params.max_thrust_per_motor;
    const double left_raw = 0.5 * (surge_cmd - yaw_cmd / b);
    const double right_raw = 0.5 * (surge_cmd + yaw_cmd / b);

    ThrustAllocation out;
    out.left = std::clamp(left_raw, -lim, lim);
    out.right = std::clamp(right_raw, -lim, lim);
    out.saturated = out.left != left_raw || out.right != right_raw;
    out.realized.X = out.left + out.right;
    out.realized.Y = 0.0;
    out.realized.N = b * (out.right - out.left);
    return out;
}

}  // namespace cues

#include "cues/tuv.hpp"

#include <algorithm>

namespace cues {

void TuvParams::validate() const {
    if (!(mass > 0.0)) throw InvalidArgument("TuvParams: mass must be positive");
    if (!(added_mass >= 0.0)) throw InvalidArgument("TuvParams: added_mass must be >= 0");
    if (!(foil_area > 0.0)) throw InvalidArgument("TuvParams: foil_area must be positive");
    if (!(lift_coefficient >= 0.0)) throw InvalidArgument("TuvParams: lift_coefficient must be >= 0");
    if (!(drag_coefficient > 0.0)) throw InvalidArgument("TuvParams: drag_coefficient must be positive");
    if (!(water_density > 0.0)) throw InvalidArgument("TuvParams: water_density must be positive");
    if (!(bluff_drag_area >= 0.0)) throw InvalidArgument("TuvParams: bluff_drag_area must be >= 0");
}

void Towline::validate() const {
    if (!(unstretched_length > 0.0)) throw InvalidArgument("Towline: unstretched_length must be positive");
    if (!(stiffness >= 0.0) || !(damping >= 0.0)) throw InvalidArgument("Towline: stiffness and damping must be >= 0");
}

HydrofoilForces hydrofoil_forces(const Vec3& v_rel, const TuvParams& p) {
    HydrofoilForces out;
    const double speed = v_rel.norm();
    if (speed == 0.0) return out;
    const double q = 0.5 * p.water_density * speed * speed * p.foil_area;
    out.lift = q * p.lift_coefficient;
    out.drag = q * p.drag_coefficient;

    const Vec3 flow_dir = v_rel / speed;
    out.force = -out.drag * flow_dir;
    // Component of "down" orthogonal to the flow; undefined for purely
    // vertical flow, where no lift is produced.
    const Vec3 down(0.0, 0.0, 1.0);
    Vec3 lift_dir = down - down.dot(flow_dir) * flow_dir;
    const double n = lift_dir.norm();
    if (n > 1e-12) {
        lift_dir /= n;
        out.force += out.lift * lift_dir;
    } else {
        out.lift = 0.0;
    }
    return out;
}

Vec3 towline_tension(const Vec3& asv_attach, const Vec3& tuv_attach, double separation_rate, const Towline& line) {
    const Vec3 d = asv_attach - tuv_attach;
    const double s = d.norm();
    if (s < 1e-12) throw DegenerateGeometry("towline attach points coincide");
    const double effective = s - line.tuv_nose_offset;
    if (effective <= line.unstretched_length) return Vec3::Zero();
    const double magnitude = line.stiffness * (effective - line.unstretched_length) + line.damping * std::max(0.0, separation_rate);
    return magnitude * (d / s);
}

double separation_rate(const Vec3& asv_attach, const Vec3& asv_attach_velocity, const Vec3& tuv_attach,
                       const Vec3& tuv_velocity) {
    const Vec3 d = asv_attach - tuv_attach;
    const double s = d.norm();
    if (s < 1e-12) return 0.0;
    return d.dot(asv_attach_velocity - tuv_velocity) / s;
}

Vec3 tuv_external_force(const TowedBodyState& state, const TuvParams& p, const Vec3& current) {
    const Vec3 v_rel = state.velocity - current;
    Vec3 f = hydrofoil_forces(v_rel, p).force;
    f -= 0.5 * p.water_density * p.bluff_drag_area * v_rel.norm() * v_rel;
    // +z is down: weight minus buoyancy, i.e. -fraction * m g.
    f.z() += -p.net_buoyancy_fraction * p.mass * kGravity;
    return f;
}

Vec3 tuv_dynamics(const TowedBodyState& state, const TuvParams& p, const Vec3& tension, const Vec3& current) {
    return (tuv_external_force(state, p, current) + tension) / p.total_mass();
}

Towline winch_set_length(const Towline& line, double commanded_length, double max_rate, double dt) {
    if (commanded_length > kCableStockLength) {
        throw OutOfRange("winch command " + std::to_string(commanded_length) + " m exceeds the " +
                         std::to_string(kCableStockLength) + " m cable stock");
    }
    if (!(commanded_length > 0.0)) throw OutOfRange("winch command must be positive");
    if (!(max_rate >= 0.0) || !(dt > 0.0)) throw InvalidArgument("winch_set_length: bad rate or dt");
    Towline out = line;
    const double step = max_rate * dt;
    out.unstretched_length = line.unstretched_length + std::clamp(commanded_length - line.unstretched_length, -step, step);
    return out;
}

}  // namespace cues

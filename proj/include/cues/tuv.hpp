#pragma once

// Towed underwater vehicle: point-mass dynamics with added mass, hydrofoil
// lift/drag, and the elastic tension-only towline to the ASV winch.

#include "cues/world.hpp"

namespace cues {

/// Maximum cable on the winch drum [m].
inline constexpr double kCableStockLength = 30.0;

/// Navigation frame with z positive down (z = 0 at the surface).
struct TowedBodyState {
    Vec3 position = Vec3::Zero();
    Vec3 velocity = Vec3::Zero();
};

struct TuvParams {
    double mass = 20.0;             // m_b [kg]
    double added_mass = 5.0;        // m_b,a [kg]
    double foil_area = 0.1;         // S [m^2]
    double lift_coefficient = 0.1;  // C_L
    double drag_coefficient = 0.08; // C_D
    double water_density = 1025.0;  // rho [kg/m^3]
    double bluff_drag_area = 0.005; // Cd * A of the body [m^2]
    /// Net buoyancy as a fraction of weight; negative sinks.
    double net_buoyancy_fraction = -0.02;

    void validate() const;
    double total_mass() const { return mass + added_mass; }
};

struct Towline {
    double unstretched_length = kCableStockLength;  // [m]
    double stiffness = 800.0;                       // k [N/m]
    double damping = 50.0;                          // c [N s/m]
    double asv_stern_offset = 0.6;                  // [m] behind the ASV origin
    double tuv_nose_offset = 0.0;                   // [m] ahead of the TUV origin, along the line

    void validate() const;
};

struct HydrofoilForces {
    double lift = 0.0;  // [N]
    double drag = 0.0;  // [N]
    Vec3 force = Vec3::Zero();
};

/// L = 1/2 rho V^2 S C_L, D = 1/2 rho V^2 S C_D. Drag opposes v_rel; lift is
/// perpendicular to v_rel in its vertical plane and points down.
HydrofoilForces hydrofoil_forces(const Vec3& v_rel, const TuvParams& params);

/// Force on the TUV from the line. Zero while slack (separation <= L0);
/// otherwise k (s - L0) + c max(0, s_dot), directed from the TUV toward the
/// ASV attach point. The ASV receives the negation.
Vec3 towline_tension(const Vec3& asv_attach, const Vec3& tuv_attach, double separation_rate, const Towline& line);

/// d/dt |asv_attach - tuv_attach|.
double separation_rate(const Vec3& asv_attach, const Vec3& asv_attach_velocity, const Vec3& tuv_attach,
                       const Vec3& tuv_velocity);

/// F_b: hydrofoil + bluff drag on the water-relative velocity, plus net
/// weight minus buoyancy.
Vec3 tuv_external_force(const TowedBodyState& state, const TuvParams& params, const Vec3& current);

/// dv_b/dt = (F_b + T) / (m_b + m_b,a).
Vec3 tuv_dynamics(const TowedBodyState& state, const TuvParams& params, const Vec3& tension, const Vec3& current);

/// Slew the paid-out length toward `commanded_length` at <= max_rate.
Towline winch_set_length(const Towline& line, double commanded_length, double max_rate, double dt);

}  // namespace cues

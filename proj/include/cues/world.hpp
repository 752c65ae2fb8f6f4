#pragma once

// Frames, angles, the fixed-step clock and the RK4 integrator shared by
// every vehicle model.

#include <cmath>
#include <cstdint>
#include <numbers>
#include <type_traits>

#include <Eigen/Dense>

#include "cues/error.hpp"

namespace cues {

using Vec2 = Eigen::Vector2d;
using Vec3 = Eigen::Vector3d;

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kGravity = 9.81;

/// Wrap to (-pi, pi]. -pi maps to +pi.
double wrap_angle(double theta);

inline double deg_to_rad(double deg) { return deg * kPi / 180.0; }
inline double kmh_to_ms(double kmh) { return kmh / 3.6; }

/// Rotate a body-frame planar vector into the navigation frame by heading psi.
Vec2 rotate_body_to_nav(const Vec2& body, double psi);
Vec2 rotate_nav_to_body(const Vec2& nav, double psi);

struct Frame2D {
    Vec2 origin = Vec2::Zero();
    double heading = 0.0;

    Frame2D() = default;
    Frame2D(const Vec2& o, double h) : origin(o), heading(wrap_angle(h)) {}

    Vec2 to_nav(const Vec2& local) const { return origin + rotate_body_to_nav(local, heading); }
};

/// Fixed-step clock. Time is always step_count * dt so no drift accumulates.
class SimClock {
public:
    explicit SimClock(double dt);

    double dt() const noexcept { return dt_; }
    std::int64_t step() const noexcept { return step_; }
    double t() const noexcept { return static_cast<double>(step_) * dt_; }
    void advance() noexcept { ++step_; }

private:
    double dt_;
    std::int64_t step_ = 0;
};

namespace detail {
inline bool all_finite(double x) { return std::isfinite(x); }
template <typename Derived>
bool all_finite(const Eigen::MatrixBase<Derived>& x) {
    return x.allFinite();
}
}  // namespace detail

/// One classical Runge-Kutta step. `deriv` may be called as deriv(t, x) or
/// deriv(x); it must be pure. Throws IntegrationFault if any stage
/// derivative is non-finite.
template <typename State, typename Deriv>
State rk4_step(const State& x, Deriv&& deriv, double dt, double t = 0.0) {
    if (!(dt > 0.0)) throw InvalidArgument("rk4_step: dt must be positive");
    auto eval = [&](double tt, const State& s) -> State {
        State d;
        if constexpr (std::is_invocable_v<Deriv&, double, const State&>) {
            d = deriv(tt, s);
        } else {
            d = deriv(s);
        }
        if (!detail::all_finite(d)) throw IntegrationFault("non-finite derivative", tt);
        return d;
    };
    const double h2 = 0.5 * dt;
    const State k1 = eval(t, x);
    const State k2 = eval(t + h2, State(x + h2 * k1));
    const State k3 = eval(t + h2, State(x + h2 * k2));
    const State k4 = eval(t + dt, State(x + dt * k3));
    return State(x + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4));
}

}  // namespace cues

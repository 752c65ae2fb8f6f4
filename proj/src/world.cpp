#include "cues/world.hpp"

namespace cues {

double wrap_angle(double theta) {
    double a = std::fmod(theta + kPi, 2.0 * kPi);
    if (a <= 0.0) a += 2.0 * kPi;
    return a - kPi;
}

Vec2 rotate_body_to_nav(const Vec2& body, double psi) {
    if (!body.allFinite() || !std::isfinite(psi)) {
        throw InvalidArgument("rotate_body_to_nav: non-finite input");
    }
    const double c = std::cos(psi);
    const double s = std::sin(psi);
    return {c * body.x() - s * body.y(), s * body.x() + c * body.y()};
}

Vec2 rotate_nav_to_body(const Vec2& nav, double psi) {
    if (!nav.allFinite() || !std::isfinite(psi)) {
        throw InvalidArgument("rotate_nav_to_body: non-finite input");
    }
    const double c = std::cos(psi);
    const double s = std::sin(psi);
    return {c * nav.x() + s * nav.y(), -s * nav.x() + c * nav.y()};
}

SimClock::SimClock(double dt) : dt_(dt) {
    if (!(dt > 0.0) || !std::isfinite(dt)) throw InvalidArgument("SimClock: dt must be positive");
}

}  // namespace cues

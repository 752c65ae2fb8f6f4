#include <doctest.h>

#include <cmath>

#include "cues/rng.hpp"
#include "cues/world.hpp"

using namespace cues;

TEST_CASE("wrap_angle maps into (-pi, pi]") {
    CHECK(wrap_angle(0.0) == 0.0);
    CHECK(wrap_angle(3.0 * kPi) == doctest::Approx(kPi).epsilon(1e-15));
    CHECK(wrap_angle(-kPi) == kPi);
    CHECK(wrap_angle(kPi) == kPi);
    CHECK(wrap_angle(-3.0 * kPi / 2.0) == doctest::Approx(kPi / 2.0));
    SeededRng rng(1, RngStream::Test);
    for (int i = 0; i < 1000; ++i) {
        const double a = (rng.uniform() - 0.5) * 200.0;
        const double w = wrap_angle(a);
        CHECK(w > -kPi);
        CHECK(w <= kPi);
        const double k = (a - w) / (2.0 * kPi);
        CHECK(std::abs(k - std::round(k)) < 1e-9);
    }
}

TEST_CASE("body to nav rotation") {
    const Vec2 a = rotate_body_to_nav({1.0, 0.0}, 0.0);
    CHECK(a.x() == 1.0);
    CHECK(a.y() == 0.0);
    const Vec2 b = rotate_body_to_nav({1.0, 0.0}, kPi / 2.0);
    CHECK(std::abs(b.x()) < 1e-15);
    CHECK(b.y() == doctest::Approx(1.0));
    CHECK(std::abs(rotate_body_to_nav({0.6, 0.8}, 0.3).norm() - 1.0) < 1e-12);
}

TEST_CASE("rotation is an isometry and inverts") {
    SeededRng rng(2, RngStream::Test);
    for (int i = 0; i < 1000; ++i) {
        const Vec2 v(rng.gaussian(10.0), rng.gaussian(10.0));
        const double psi = (rng.uniform() - 0.5) * 20.0;
        const Vec2 n = rotate_body_to_nav(v, psi);
        CHECK(std::abs(n.norm() - v.norm()) < 1e-12);
        CHECK((rotate_nav_to_body(n, psi) - v).norm() < 1e-12);
    }
}

TEST_CASE("rk4 examples") {
    using V1 = Eigen::Matrix<double, 1, 1>;
    const V1 one = V1::Constant(1.0);
    CHECK(rk4_step(one, [](const V1&) { return V1::Zero().eval(); }, 0.01)(0) == 1.0);
    CHECK(rk4_step(V1::Zero().eval(), [](const V1&) { return V1::Ones().eval(); }, 0.5)(0) == 0.5);

    // Ten steps of 0.1 on x' = -x. One RK4 step multiplies by the degree-4
    // Taylor polynomial of exp(-0.1), so the result is that factor to the
    // tenth power; it sits 3.3e-7 from exp(-1).
    V1 x = one;
    for (int i = 0; i < 10; ++i) x = rk4_step(x, [](const V1& s) { return V1(-s); }, 0.1);
    const double z = -0.1;
    const double factor = 1.0 + z + z * z / 2.0 + z * z * z / 6.0 + z * z * z * z / 24.0;
    CHECK(x(0) == doctest::Approx(std::pow(factor, 10)).epsilon(1e-14));
    CHECK(std::abs(x(0) - std::exp(-1.0)) < 5e-7);
}

TEST_CASE("rk4 is fourth order on linear decay") {
    // Per-step local error against exp(lambda dt); the ratio on halving dt
    // gives the local order (5 for a fourth-order method).
    const double lambda = -1.3;
    auto local_error = [&](double dt) {
        const double y = rk4_step(1.0, [&](double s) { return lambda * s; }, dt);
        return std::abs(y - std::exp(lambda * dt));
    };
    const double e1 = local_error(0.2);
    const double e2 = local_error(0.1);
    const double order = std::log2(e1 / e2);
    CHECK(order >= 3.9);

    // Global error over [0, 1] drops by about 16 on halving.
    auto global_error = [&](int n) {
        double y = 1.0;
        for (int i = 0; i < n; ++i) y = rk4_step(y, [&](double s) { return lambda * s; }, 1.0 / n);
        return std::abs(y - std::exp(lambda));
    };
    CHECK(std::log2(global_error(10) / global_error(20)) >= 3.9);
}

TEST_CASE("rk4 rejects bad steps and non-finite derivatives") {
    CHECK_THROWS_AS(rk4_step(1.0, [](double) { return 0.0; }, 0.0), InvalidArgument);
    CHECK_THROWS_AS(rk4_step(1.0, [](double) { return NAN; }, 0.1), IntegrationFault);
}

TEST_CASE("rk4 passes time to time-dependent derivatives") {
    // x' = t from t = 1 over dt = 0.5: exact for polynomials of degree <= 4.
    const double x = rk4_step(0.0, [](double t, double) { return t; }, 0.5, 1.0);
    CHECK(x == doctest::Approx(0.5 * (1.5 * 1.5 - 1.0)).epsilon(1e-14));
}

TEST_CASE("clock has no drift") {
    SimClock c(0.01);
    for (int i = 0; i < 100000; ++i) c.advance();
    CHECK(c.step() == 100000);
    CHECK(c.t() == 1000.0);
    CHECK_THROWS_AS(SimClock(0.0), InvalidArgument);
    CHECK_THROWS_AS(SimClock(-1.0), InvalidArgument);
}

TEST_CASE("frame to_nav") {
    Frame2D f({1.0, 2.0}, kPi / 2.0);
    const Vec2 p = f.to_nav({1.0, 0.0});
    CHECK(p.x() == doctest::Approx(1.0));
    CHECK(p.y() == doctest::Approx(3.0));
    CHECK(Frame2D({0, 0}, 3.0 * kPi).heading == doctest::Approx(kPi));
}

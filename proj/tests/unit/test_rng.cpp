#include <doctest.h>

#include <cmath>
#include <vector>

#include "cues/rng.hpp"

using namespace cues;

TEST_CASE("same seed and stream repeat exactly") {
    SeededRng a(42, RngStream::Gps), b(42, RngStream::Gps);
    for (int i = 0; i < 1000; ++i) CHECK(a.next_u64() == b.next_u64());
}

TEST_CASE("streams are independent of each other's consumption") {
    SeededRng gps(7, RngStream::Gps);
    std::vector<double> ref;
    for (int i = 0; i < 100; ++i) ref.push_back(gps.gaussian());

    // Drawing heavily from a second stream must not change the first.
    SeededRng gps2(7, RngStream::Gps), gust(7, RngStream::Gust);
    for (int i = 0; i < 100; ++i) {
        for (int j = 0; j < 13; ++j) gust.uniform();
        CHECK(gps2.gaussian() == ref[static_cast<std::size_t>(i)]);
    }
}

TEST_CASE("different seeds and streams differ") {
    CHECK(SeededRng(1, RngStream::Gps).next_u64() != SeededRng(2, RngStream::Gps).next_u64());
    CHECK(SeededRng(1, RngStream::Gps).next_u64() != SeededRng(1, RngStream::Compass).next_u64());
}

TEST_CASE("uniform lies in the open unit interval with the right moments") {
    SeededRng r(3, RngStream::Test);
    const int n = 200000;
    double sum = 0.0, sum2 = 0.0;
    for (int i = 0; i < n; ++i) {
        const double u = r.uniform();
        REQUIRE(u > 0.0);
        REQUIRE(u < 1.0);
        sum += u;
        sum2 += u * u;
    }
    const double mean = sum / n;
    CHECK(std::abs(mean - 0.5) < 4.0 * std::sqrt(1.0 / 12.0 / n));
    CHECK(std::abs(sum2 / n - mean * mean - 1.0 / 12.0) < 1e-3);
}

TEST_CASE("gaussian moments") {
    SeededRng r(4, RngStream::Test);
    const int n = 200000;
    double sum = 0.0, sum2 = 0.0, sum4 = 0.0;
    for (int i = 0; i < n; ++i) {
        const double g = r.gaussian();
        sum += g;
        sum2 += g * g;
        sum4 += g * g * g * g;
    }
    CHECK(std::abs(sum / n) < 4.0 / std::sqrt(n));
    CHECK(std::abs(sum2 / n - 1.0) < 4.0 * std::sqrt(2.0 / n));
    CHECK(std::abs(sum4 / n - 3.0) < 0.1);
}

TEST_CASE("bernoulli frequency") {
    SeededRng r(5, RngStream::Test);
    int hits = 0;
    const int n = 100000;
    for (int i = 0; i < n; ++i) hits += r.bernoulli(0.3);
    CHECK(std::abs(hits / double(n) - 0.3) < 4.0 * std::sqrt(0.3 * 0.7 / n));
    CHECK_FALSE(SeededRng(5, RngStream::Test).bernoulli(0.0));
    CHECK(SeededRng(5, RngStream::Test).bernoulli(1.0));
}

TEST_CASE("draw index counts raw draws") {
    SeededRng r(9, RngStream::Test);
    r.uniform();
    r.gaussian();
    CHECK(r.draw_index() == 3);
}

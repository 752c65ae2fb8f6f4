#pragma once

#include <cstdint>

namespace cues {

/// Stream ids for the independent random consumers of one run. Adding a new
/// consumer takes a new id and leaves existing streams untouched.
enum class RngStream : std::uint64_t {
    Gps = 1,
    Compass = 2,
    Gyro = 3,
    Gust = 4,
    Detection = 5,
    DetectionNoise = 6,
    Environment = 7,
    ProcessNoise = 8,
    Test = 99,
};

/// Counter-based generator: draw i of (seed, stream) is a pure function of
/// the triple, so sequences are reproducible across runs and platforms.
/// Distributions are implemented here rather than with <random> because the
/// standard distributions are not portable bit-for-bit.
class SeededRng {
public:
    SeededRng(std::uint64_t seed, std::uint64_t stream);
    SeededRng(std::uint64_t seed, RngStream stream)
        : SeededRng(seed, static_cast<std::uint64_t>(stream)) {}

    std::uint64_t next_u64();
    /// Uniform in (0, 1).
    double uniform();
    /// Standard normal via Box-Muller; consumes two draws.
    double gaussian();
    double gaussian(double sigma) { return sigma * gaussian(); }
    bool bernoulli(double p);

    std::uint64_t seed() const noexcept { return seed_; }
    std::uint64_t stream() const noexcept { return stream_; }
    std::uint64_t draw_index() const noexcept { return counter_; }

private:
    std::uint64_t seed_;
    std::uint64_t stream_;
    std::uint64_t key_;
    std::uint64_t counter_ = 0;
};

}  // namespace cues

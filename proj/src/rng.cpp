#include "cues/rng.hpp"

#include <cmath>
#include <numbers>

namespace cues {
namespace {

constexpr std::uint64_t splitmix64(std::uint64_t z) {
    z += 0x9E3779B97F4A7C15ULL;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

}  // namespace

SeededRng::SeededRng(std::uint64_t seed, std::uint64_t stream)
    : seed_(seed), stream_(stream), key_(splitmix64(seed ^ splitmix64(stream * 0xD1B54A32D192ED03ULL))) {}

std::uint64_t SeededRng::next_u64() {
    const std::uint64_t c = counter_++;
    return splitmix64(key_ ^ splitmix64(c));
}

double SeededRng::uniform() {
    // 53 random bits, offset by half an ulp so 0 and 1 are never produced.
    return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
}

double SeededRng::gaussian() {
    const double u1 = uniform();
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

bool SeededRng::bernoulli(double p) { return uniform() < p; }

}  // namespace cues

#pragma once

#include <cmath>
#include <complex>
#include <cstdint>

namespace ldh {

// Counter-keyed random streams for the synthetic generator. Every stream is
// derived from (seed, component, index), so per-pixel sequences are identical
// no matter in which order pixels are generated, and a component draws the
// same values whether or not other components are enabled. std::mt19937 would
// tie draws to a single global sequence, which breaks both guarantees.

inline std::uint64_t splitmix64(std::uint64_t& state) {
    state += 0x9e3779b97f4a7c15ull;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

/// Collapse (seed, component, index) into one well-mixed 64-bit stream seed.
inline std::uint64_t stream_seed(std::uint64_t seed, std::uint64_t component, std::uint64_t index) {
    std::uint64_t s = seed;
    s ^= splitmix64(component);
    std::uint64_t c = component * 0x2545f4914f6cdd1dull;
    s ^= splitmix64(c) + index;
    std::uint64_t i = index ^ 0x9e3779b97f4a7c15ull;
    s ^= splitmix64(i);
    return s;
}

class RandomStream {
public:
    RandomStream() = default;
    RandomStream(std::uint64_t seed, std::uint64_t component, std::uint64_t index)
        : state_(stream_seed(seed, component, index)) {}

    std::uint64_t next_u64() { return splitmix64(state_); }

    /// Uniform in (0, 1]; never returns 0 so log() below is safe.
    double next_uniform() {
        return (static_cast<double>(next_u64() >> 11) + 1.0) * 0x1.0p-53;
    }

    /// Circularly symmetric complex Gaussian with E|z|^2 = 1.
    std::complex<double> next_complex_gaussian() {
        const double radius = std::sqrt(-std::log(next_uniform()));
        const double angle = 2.0 * M_PI * next_uniform();
        return {radius * std::cos(angle), radius * std::sin(angle)};
    }

private:
    std::uint64_t state_ = 0;
};

}  // namespace ldh
